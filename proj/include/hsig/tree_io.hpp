#pragma once

// JSON form of filtration trees:
//   {"time_horizon": T, "dim": d, "root": node}
//   node = {"prob": number | "p/q", "value": [d numbers | "p/q"], "children": [node...]}
// The root's "prob" may be omitted. Any rational string switches the whole
// tree to exact arithmetic; plain numbers are then taken at their exact
// binary value.

#include <string>

#include <json.hpp>

#include "hsig/filtered_process.hpp"

namespace hsig {

struct LoadedTree {
  bool exact = false;
  ExactTree exact_tree;  // meaningful when exact
  Tree tree;             // always populated
};

LoadedTree tree_from_json(const nlohmann::json& j);
LoadedTree load_tree_file(const std::string& path);

// Prunes and validates both representations; throws ValidationError.
LoadedTree validated(const LoadedTree& t);

nlohmann::json tree_to_json(const ExactTree& tree);
nlohmann::json tree_to_json(const Tree& tree);

// {"coord": {"times": [..], "map": name, "params": [..]}}
// {"compose": {"map": name, "params": [..], "args": [..]}}
// {"cond_exp": {"time": t, "arg": {..}}}
AdaptedFunctional functional_from_json(const nlohmann::json& j);
nlohmann::json functional_to_json(const AdaptedFunctional& af);

}  // namespace hsig
