// nwkmst - node-weighted quota Steiner tree solver toolkit.
//
// Subcommands: gen | solve | oracle | verify | bench.
// Exit codes: 0 success, 1 infeasible, 2 invariant violation, 3 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nwkmst/generators.hpp"
#include "nwkmst/io.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/solver.hpp"

namespace {

using namespace nwkmst;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitUsage = 3;

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << payload;
}

struct GenOptions {
  std::string kind = "grid";
  std::string out = "-";
  int rows = 3, cols = 3;
  Profit quota = -1;
  std::uint64_t seed = 1;
  std::string cost_dist = "uniform";
  double cost_lo = 0.1, cost_hi = 2.0;
  int q = 2;
  double r = 3.0;
  int gamma = -1;
  double eps_perturb = 1e-6;
  std::string cover_file;
};

int run_gen(const GenOptions& opt) {
  Instance inst;
  if (opt.kind == "grid") {
    Profit quota = opt.quota >= 0 ? opt.quota : (opt.rows * opt.cols + 1) / 2;
    CostDist dist = opt.cost_dist == "unit" ? CostDist::unit : CostDist::uniform;
    inst = gen_planar_grid(opt.rows, opt.cols, dist, opt.cost_lo, opt.cost_hi,
                           quota, opt.seed);
  } else if (opt.kind == "cover") {
    if (opt.cover_file.empty())
      throw CLI::ValidationError("--cover-file is required for --kind cover");
    std::ifstream f(opt.cover_file);
    if (!f) throw std::runtime_error("cannot open cover file: " + opt.cover_file);
    nlohmann::json j = nlohmann::json::parse(f);
    std::vector<CoverSet> sets;
    for (const auto& s : j.at("sets"))
      sets.push_back({s.at("cost").get<Weight>(),
                      s.at("elements").get<std::vector<int>>()});
    Profit target = opt.quota >= 0 ? opt.quota : j.at("target").get<Profit>();
    inst = reduce_partial_cover(sets, j.at("n_elements").get<int>(), target);
  } else if (opt.kind == "mestre") {
    inst = mestre_instance({opt.q, opt.r});
    if (opt.quota >= 0) inst.quota = opt.quota;
  } else if (opt.kind == "handicap") {
    inst = handicap_instance({opt.q, opt.r}, {opt.gamma, opt.eps_perturb});
    if (opt.quota >= 0) inst.quota = opt.quota;
  } else {
    throw CLI::ValidationError("unknown --kind " + opt.kind);
  }
  write_output(opt.out, save_instance(inst));
  return kExitOk;
}

struct SolveOptions {
  std::string instance_file;
  std::string out = "-";
  std::string trace_file;
  SolveConfig cfg;
  std::string mode = "heuristic";
};

SolveConfig make_config(SolveOptions& opt, std::ofstream& trace_stream) {
  opt.cfg.skeleton_mode =
      opt.mode == "exhaustive" ? SkeletonMode::exhaustive : SkeletonMode::heuristic;
  if (opt.mode != "exhaustive" && opt.mode != "heuristic")
    throw CLI::ValidationError("--skeleton-mode must be heuristic or exhaustive");
  if (!opt.trace_file.empty()) {
    trace_stream.open(opt.trace_file);
    if (!trace_stream)
      throw std::runtime_error("cannot open trace file: " + opt.trace_file);
    opt.cfg.trace = &trace_stream;
  }
  return opt.cfg;
}

int run_solve(SolveOptions& opt) {
  Instance inst = load_instance_file(opt.instance_file);
  std::ofstream trace_stream;
  SolveConfig cfg = make_config(opt, trace_stream);
  SolveReport rep = solve(inst, cfg);
  write_output(opt.out, rep.to_json().dump(2) + "\n");
  if (!rep.feasible) {
    std::cerr << "infeasible: quota " << inst.quota
              << " cannot be met by any guess\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int run_oracle(const std::string& instance_file, int cap, const std::string& out) {
  Instance inst = load_instance_file(instance_file);
  OracleResult res = brute_force_quota_tree(inst, cap);
  nlohmann::json j;
  j["feasible"] = res.feasible;
  j["explored"] = res.explored;
  if (res.feasible) {
    j["opt_cost"] = res.opt_cost;
    j["opt_nodes"] = res.opt_solution.vertices;
  }
  write_output(out, j.dump(2) + "\n");
  return res.feasible ? kExitOk : kExitInfeasible;
}

int run_verify(SolveOptions& opt) {
  Instance inst = load_instance_file(opt.instance_file);
  std::ofstream trace_stream;
  SolveConfig cfg = make_config(opt, trace_stream);
  VerifyReport rep = verify(inst, cfg);
  write_output(opt.out, rep.to_json().dump(2) + "\n");
  if (rep.oracle_skipped)
    std::cerr << "warning: n=" << inst.n
              << " exceeds the oracle cap, ratio check skipped\n";
  if (rep.pass) return kExitOk;
  for (const auto& f : rep.failures) std::cerr << "verify: " << f << "\n";
  if (!rep.solve_report.feasible) return kExitInfeasible;
  return kExitInvariant;
}

int run_bench(const std::string& corpus_dir, SolveOptions& opt) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::ofstream trace_stream;
  SolveConfig cfg = make_config(opt, trace_stream);
  std::string table = bench_csv_header() + "\n";
  for (const std::string& file : files) {
    Instance inst = load_instance_file(file);
    table += bench_csv_row(fs::path(file).filename().string(), inst, cfg) + "\n";
  }
  write_output(opt.out, table);
  return kExitOk;
}

void add_config_flags(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--epsilon", opt.cfg.epsilon, "approximation knob in (0,1]")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--epsilon2", opt.cfg.epsilon2,
                  "merging knob; defaults to epsilon");
  cmd->add_option("--max-skeleton", opt.cfg.max_skeleton,
                  "cap on guessed skeleton size (default 2)");
  cmd->add_option("--skeleton-mode", opt.mode, "heuristic|exhaustive");
  cmd->add_option("--oracle-cap", opt.cfg.oracle_cap,
                  "max n for exact verification");
  cmd->add_option("--seed", opt.cfg.seed, "seed recorded in reports");
  cmd->add_option("--trace", opt.trace_file, "write moat event trace (JSON lines)");
  cmd->add_option("-o,--out", opt.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"node-weighted quota Steiner tree solver toolkit"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", gen_opt.kind, "grid|cover|mestre|handicap")->required();
  gen->add_option("--rows", gen_opt.rows);
  gen->add_option("--cols", gen_opt.cols);
  gen->add_option("--quota", gen_opt.quota);
  gen->add_option("--seed", gen_opt.seed);
  gen->add_option("--cost-dist", gen_opt.cost_dist, "unit|uniform");
  gen->add_option("--cost-lo", gen_opt.cost_lo);
  gen->add_option("--cost-hi", gen_opt.cost_hi);
  gen->add_option("--q", gen_opt.q);
  gen->add_option("--r", gen_opt.r);
  gen->add_option("--gamma", gen_opt.gamma);
  gen->add_option("--eps-perturb", gen_opt.eps_perturb);
  gen->add_option("--cover-file", gen_opt.cover_file);
  gen->add_option("-o,--out", gen_opt.out);

  SolveOptions solve_opt;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run the solver");
  solve_cmd->add_option("instance", solve_opt.instance_file)->required();
  add_config_flags(solve_cmd, solve_opt);

  std::string oracle_file, oracle_out = "-";
  int oracle_cap = kOracleCapDefault;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact brute force");
  oracle_cmd->add_option("instance", oracle_file)->required();
  oracle_cmd->add_option("--cap", oracle_cap);
  oracle_cmd->add_option("-o,--out", oracle_out);

  SolveOptions verify_opt;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "solve + oracle + invariant checks");
  verify_cmd->add_option("instance", verify_opt.instance_file)->required();
  add_config_flags(verify_cmd, verify_opt);

  SolveOptions bench_opt;
  std::string corpus_dir;
  CLI::App* bench_cmd = app.add_subcommand("bench", "ratio table over a corpus");
  bench_cmd->add_option("corpus", corpus_dir, "directory of .json instances")
      ->required();
  add_config_flags(bench_cmd, bench_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return run_gen(gen_opt);
    if (*solve_cmd) return run_solve(solve_opt);
    if (*oracle_cmd) return run_oracle(oracle_file, oracle_cap, oracle_out);
    if (*verify_cmd) return run_verify(verify_opt);
    if (*bench_cmd) return run_bench(corpus_dir, bench_opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
