// io.hpp - instance (de)serialization.
//
// Instance file format (JSON):
//   { "n": int, "root": int, "quota": int,
//     "nodes": [{"id": int, "cost": number, "profit": int}, ...],
//     "edges": [[int,int], ...] }
// Edges are listed once; the loader symmetrizes. This format is the contract
// between generators, solver and oracle.

#pragma once

#include <iosfwd>
#include <string>

#include "nwkmst/instance.hpp"

namespace nwkmst {

/// Parses and validates an instance. Throws ParseError for malformed JSON
/// (message carries the position) and ValidationError naming the violated
/// invariant otherwise.
Instance load_instance(const std::string& text);
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

/// Canonical serialization: nodes ordered by id, edges as [min,max] sorted.
std::string save_instance(const Instance& inst);
void save_instance_file(const Instance& inst, const std::string& path);

}  // namespace nwkmst
