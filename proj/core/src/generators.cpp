#include "nwkmst/generators.hpp"

#include <algorithm>
#include <string>

namespace nwkmst {

namespace {

// splitmix64: deterministic across platforms, unlike <random> distributions
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) / 9007199254740992.0);
  }
};

}  // namespace

Instance gen_planar_grid(int rows, int cols, CostDist dist, double lo, double hi,
                         Profit quota, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw ValidationError("grid needs at least two nodes");
  Rng rng(seed);
  Instance inst;
  inst.n = rows * cols;
  inst.root = 0;
  inst.quota = quota;
  inst.cost.resize(inst.n);
  inst.profit.assign(inst.n, 1);
  inst.adj.assign(inst.n, {});
  for (NodeId v = 0; v < inst.n; ++v)
    inst.cost[v] = dist == CostDist::unit ? 1.0 : rng.uniform(lo, hi);
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) inst.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) inst.add_edge(id(r, c), id(r + 1, c));
    }
  inst.finalize();
  inst.validate();
  return inst;
}

Instance reduce_partial_cover(const std::vector<CoverSet>& sets, int n_elements,
                              Profit coverage_target) {
  int m = static_cast<int>(sets.size());
  Instance inst;
  inst.n = 1 + m + n_elements;
  inst.root = 0;
  inst.quota = coverage_target;
  inst.cost.assign(inst.n, 0);
  inst.profit.assign(inst.n, 0);
  inst.adj.assign(inst.n, {});

  std::vector<char> covered(n_elements, 0);
  for (int s = 0; s < m; ++s) {
    NodeId sv = 1 + s;
    inst.cost[sv] = sets[s].cost;
    inst.add_edge(inst.root, sv);
    for (int e : sets[s].elements) {
      if (e < 0 || e >= n_elements)
        throw ValidationError("set " + std::to_string(s) + " covers element " +
                              std::to_string(e) + " out of range");
      inst.add_edge(sv, static_cast<NodeId>(1 + m + e));
      covered[e] = 1;
    }
  }
  for (int e = 0; e < n_elements; ++e) inst.profit[1 + m + e] = 1;

  Profit coverable = 0;
  for (char c : covered) coverable += c;
  if (coverage_target > coverable)
    throw ValidationError("coverage target " + std::to_string(coverage_target) +
                          " exceeds the " + std::to_string(coverable) +
                          " coverable elements");
  inst.finalize();
  inst.validate();
  return inst;
}

MestreLayout mestre_layout(const MestreParams& p, bool with_gadget, int gamma) {
  (void)gamma;
  MestreLayout lay;
  lay.q = p.q;
  int q = p.q;
  lay.root = 0;
  for (int i = 0; i < q; ++i) lay.a_sets.push_back(1 + i);
  for (int i = 0; i < q; ++i) lay.b_sets.push_back(1 + q + i);
  for (int i = 0; i < q; ++i) lay.o_sets.push_back(1 + 2 * q + i);
  NodeId base = 1 + 3 * q;
  for (int i = 0; i < q * q * q; ++i) lay.grid_elements.push_back(base + i);
  base += q * q * q;
  for (int i = 0; i < 2 * q; ++i) lay.cross_elements.push_back(base + i);
  base += 2 * q;
  if (with_gadget)
    for (int i = 0; i < q * q * q; ++i) lay.gadget.push_back(base + i);
  return lay;
}

namespace {

// element index within the cover universe: cell (column i, row j), slot s
int grid_elem(int q, int i, int j, int s) { return (i * q + j) * q + s; }

std::vector<CoverSet> mestre_sets(const MestreParams& p) {
  int q = p.q;
  double r = p.r;
  int n_grid = q * q * q;
  int cross1 = n_grid;      // cross1_j = n_grid + j, shared between B_j and O_j
  int cross2 = n_grid + q;  // cross2_j = n_grid + q + j, B_j only
  std::vector<CoverSet> sets;
  for (int i = 0; i < q; ++i) {  // A_i: column i
    CoverSet s;
    s.cost = (2.0 / 3.0) * (r / q);
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k) s.elements.push_back(grid_elem(q, i, j, k));
    sets.push_back(std::move(s));
  }
  for (int j = 0; j < q; ++j) {  // B_j: row j plus two extra elements
    CoverSet s;
    s.cost = (4.0 / 3.0) * (r / q);
    for (int i = 0; i < q; ++i)
      for (int k = 0; k < q; ++k) s.elements.push_back(grid_elem(q, i, j, k));
    s.elements.push_back(cross1 + j);
    s.elements.push_back(cross2 + j);
    sets.push_back(std::move(s));
  }
  for (int k = 0; k < q; ++k) {  // O_k: slot k of every cell plus one B_k element
    CoverSet s;
    s.cost = 1.0 / q;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) s.elements.push_back(grid_elem(q, i, j, k));
    s.elements.push_back(cross1 + k);
    sets.push_back(std::move(s));
  }
  return sets;
}

}  // namespace

Instance mestre_instance(const MestreParams& p) {
  if (p.q < 2) throw ValidationError("mestre instance needs q >= 2");
  int q = p.q;
  int n_elements = q * q * q + 2 * q;
  // the O family covers the whole grid plus its shared elements, exactly
  Profit quota = static_cast<Profit>(q) * q * q + q;
  return reduce_partial_cover(mestre_sets(p), n_elements, quota);
}

Instance handicap_instance(const MestreParams& m, const GadgetParams& g) {
  if (m.q < 2 || m.q % 2 != 0)
    throw ValidationError("handicap instance needs even q >= 2");
  int q = m.q;
  int gamma = g.gamma > 0 ? g.gamma : q * q * q;
  if (g.eps_perturb <= 0)
    throw ValidationError("eps_perturb must be positive");

  MestreLayout lay = mestre_layout(m, true, gamma);
  int n_grid = q * q * q;
  int n_gadget = q * q * q;
  int n_high = n_grid + n_gadget;  // high-potential hosts
  Instance inst;
  inst.n = 1 + 3 * q + n_grid + 2 * q + n_gadget + n_high * gamma;
  inst.root = 0;
  inst.quota = 2 * static_cast<Profit>(q) * q * q * gamma + q;
  inst.cost.assign(inst.n, 0);
  inst.profit.assign(inst.n, 1);
  inst.adj.assign(inst.n, {});
  inst.profit[inst.root] = 0;

  for (int i = 0; i < q; ++i) {
    inst.cost[lay.a_sets[i]] = (2.0 / 3.0) * (m.r / q) - g.eps_perturb;
    inst.cost[lay.b_sets[i]] = (4.0 / 3.0) * (m.r / q);
    inst.cost[lay.o_sets[i]] = 1.0 / q;
    inst.profit[lay.a_sets[i]] = 0;
    inst.profit[lay.b_sets[i]] = 0;
    inst.profit[lay.o_sets[i]] = 0;
    inst.add_edge(inst.root, lay.a_sets[i]);
    inst.add_edge(inst.root, lay.b_sets[i]);
    inst.add_edge(inst.root, lay.o_sets[i]);
  }

  auto elem = [&](int i, int j, int s) { return lay.grid_elements[grid_elem(q, i, j, s)]; };
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int s = 0; s < q; ++s) {
        inst.add_edge(lay.a_sets[i], elem(i, j, s));
        inst.add_edge(lay.b_sets[j], elem(i, j, s));
        inst.add_edge(lay.o_sets[s], elem(i, j, s));
      }
  for (int j = 0; j < q; ++j) {
    inst.add_edge(lay.b_sets[j], lay.cross_elements[j]);      // shared with O_j
    inst.add_edge(lay.b_sets[j], lay.cross_elements[q + j]);  // B_j only
    inst.add_edge(lay.o_sets[j], lay.cross_elements[j]);
  }

  // handicap grid: q columns x q^2 rows
  auto gadget_at = [&](int col, int row) { return lay.gadget[col * q * q + row]; };
  for (int col = 0; col < q; ++col)
    for (int row = 0; row < q * q; ++row) {
      NodeId v = gadget_at(col, row);
      for (int j = 0; j < q; ++j) inst.add_edge(lay.b_sets[j], v);
      inst.add_edge(lay.o_sets[col], v);
    }
  // A_i touches columns i..i+q/2-1 (mod q): every column gets q/2 A vertices
  for (int i = 0; i < q; ++i)
    for (int d = 0; d < q / 2; ++d) {
      int col = (i + d) % q;
      for (int row = 0; row < q * q; ++row)
        inst.add_edge(lay.a_sets[i], gadget_at(col, row));
    }

  // pendants turn every grid element and gadget vertex into a high-potential
  // terminal; cross elements stay low-potential
  NodeId pendant = static_cast<NodeId>(1 + 3 * q + n_grid + 2 * q + n_gadget);
  auto attach = [&](NodeId host) {
    for (int t = 0; t < gamma; ++t) inst.add_edge(host, pendant++);
  };
  for (NodeId v : lay.grid_elements) attach(v);
  for (NodeId v : lay.gadget) attach(v);

  inst.finalize();
  inst.validate();
  return inst;
}

Instance random_tree_instance(int n, std::uint64_t seed, double lo, double hi) {
  if (n < 1) throw ValidationError("tree needs at least one node");
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.root = 0;
  inst.quota = n;
  inst.cost.resize(n);
  inst.profit.assign(n, 1);
  inst.adj.assign(n, {});
  for (NodeId v = 0; v < n; ++v) inst.cost[v] = rng.uniform(lo, hi);
  for (NodeId v = 1; v < n; ++v)
    inst.add_edge(v, static_cast<NodeId>(rng.next() % static_cast<std::uint64_t>(v)));
  inst.finalize();
  inst.validate();
  return inst;
}

}  // namespace nwkmst
