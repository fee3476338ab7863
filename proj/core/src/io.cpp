#include "nwkmst/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nwkmst {

using nlohmann::json;

namespace {

json require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError(std::string("missing field \"") + field + "\"");
  return *it;
}

}  // namespace

Instance load_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance file is not a JSON object");

  Instance inst;
  try {
    inst.n = require(j, "n").get<NodeId>();
    inst.root = require(j, "root").get<NodeId>();
    inst.quota = require(j, "quota").get<Profit>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad header field: ") + e.what());
  }
  if (inst.n <= 0) throw ValidationError("instance has no nodes");

  inst.cost.assign(inst.n, -1.0);
  inst.profit.assign(inst.n, -1);
  inst.adj.assign(inst.n, {});

  const json nodes = require(j, "nodes");
  if (!nodes.is_array()) throw ParseError("\"nodes\" is not an array");
  std::vector<char> seen(inst.n, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& nd = nodes[i];
    NodeId id;
    try {
      id = require(nd, "id").get<NodeId>();
    } catch (const json::exception& e) {
      throw ParseError("nodes[" + std::to_string(i) + "]: " + e.what());
    }
    if (id < 0 || id >= inst.n)
      throw ValidationError("node id " + std::to_string(id) + " out of range [0," +
                            std::to_string(inst.n) + ")");
    if (seen[id])
      throw ValidationError("duplicate node entry for id " + std::to_string(id));
    seen[id] = 1;
    try {
      inst.cost[id] = require(nd, "cost").get<Weight>();
      inst.profit[id] = require(nd, "profit").get<Profit>();
    } catch (const json::exception& e) {
      throw ParseError("nodes[" + std::to_string(i) + "]: " + e.what());
    }
  }
  for (NodeId v = 0; v < inst.n; ++v)
    if (!seen[v])
      throw ValidationError("missing node entry for id " + std::to_string(v));

  const json edges = require(j, "edges");
  if (!edges.is_array()) throw ParseError("\"edges\" is not an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2)
      throw ParseError("edges[" + std::to_string(i) + "] is not a pair");
    NodeId u, v;
    try {
      u = e[0].get<NodeId>();
      v = e[1].get<NodeId>();
    } catch (const json::exception& ex) {
      throw ParseError("edges[" + std::to_string(i) + "]: " + ex.what());
    }
    if (u < 0 || u >= inst.n || v < 0 || v >= inst.n)
      throw ValidationError("edge [" + std::to_string(u) + "," + std::to_string(v) +
                            "] endpoint out of range");
    inst.add_edge(u, v);
  }
  inst.finalize();
  inst.validate();
  return inst;
}

Instance load_instance(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

Instance load_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open instance file: " + path);
  return load_instance(f);
}

std::string save_instance(const Instance& inst) {
  json j;
  j["n"] = inst.n;
  j["root"] = inst.root;
  j["quota"] = inst.quota;
  json nodes = json::array();
  for (NodeId v = 0; v < inst.n; ++v)
    nodes.push_back({{"id", v}, {"cost", inst.cost[v]}, {"profit", inst.profit[v]}});
  j["nodes"] = std::move(nodes);
  std::vector<std::pair<NodeId, NodeId>> es;
  for (NodeId u = 0; u < inst.n; ++u)
    for (NodeId v : inst.adj[u])
      if (u < v) es.emplace_back(u, v);
  std::sort(es.begin(), es.end());
  json edges = json::array();
  for (auto [u, v] : es) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open output file: " + path);
  f << save_instance(inst);
}

}  // namespace nwkmst
