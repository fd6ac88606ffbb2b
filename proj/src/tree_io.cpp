#include "hsig/tree_io.hpp"

#include <fstream>
#include <sstream>

namespace hsig {

using nlohmann::json;

namespace {

bool has_rational_string(const json& node) {
  if (node.contains("prob") && node["prob"].is_string()) return true;
  if (node.contains("value") && node["value"].is_array())
    for (const auto& v : node["value"])
      if (v.is_string()) return true;
  if (node.contains("children") && node["children"].is_array())
    for (const auto& c : node["children"])
      if (c.is_object() && has_rational_string(c)) return true;
  return false;
}

Rational exact_number(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(BigInt(v.get<unsigned long long>()));
    return Rational(BigInt(v.get<long long>()));
  }
  if (v.is_number_float()) return exact_rational(v.get<double>());
  throw ParseError(where + ": expected a number or rational string");
}

double float_number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  throw ParseError(where + ": expected a number");
}

template <class S>
S read_scalar(const json& v, const std::string& where) {
  if constexpr (ScalarTraits<S>::exact) {
    return exact_number(v, where);
  } else {
    return float_number(v, where);
  }
}

template <class S>
std::vector<S> read_value(const json& node, const std::string& where) {
  if (!node.contains("value")) throw ParseError(where + ": missing \"value\"");
  const auto& arr = node["value"];
  if (!arr.is_array()) throw ParseError(where + ": \"value\" must be an array");
  std::vector<S> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(read_scalar<S>(arr[i], where + ".value[" + std::to_string(i) + "]"));
  return out;
}

template <class S>
void read_children(const json& node, FiltrationTree<S>& tree, int id, const std::string& where) {
  if (!node.contains("children")) return;
  const auto& ch = node["children"];
  if (!ch.is_array()) throw ParseError(where + ": \"children\" must be an array");
  for (std::size_t i = 0; i < ch.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    const auto& c = ch[i];
    if (!c.is_object()) throw ParseError(w + ": node must be an object");
    if (!c.contains("prob")) throw ParseError(w + ": missing \"prob\"");
    S prob = read_scalar<S>(c["prob"], w + ".prob");
    int cid = tree.add_child(id, std::move(prob), read_value<S>(c, w));
    read_children(c, tree, cid, w);
  }
}

template <class S>
FiltrationTree<S> read_tree(const json& j, int horizon, int dim) {
  const auto& root = j["root"];
  FiltrationTree<S> tree(horizon, dim, read_value<S>(root, "root"));
  if (root.contains("prob")) tree.node(0).prob = read_scalar<S>(root["prob"], "root.prob");
  read_children(root, tree, 0, "root");
  return tree;
}

int read_int(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const auto& v = j[key];
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

template <class S>
json scalar_json(const S& x) {
  if constexpr (ScalarTraits<S>::exact) {
    return format_rational(x);
  } else {
    return x;
  }
}

template <class S>
json node_json(const FiltrationTree<S>& tree, int n) {
  const auto& node = tree.node(n);
  json out = json::object();
  if (n != 0) out["prob"] = scalar_json(node.prob);
  json v = json::array();
  for (const auto& x : node.value) v.push_back(scalar_json(x));
  out["value"] = v;
  json ch = json::array();
  for (int c : node.children) ch.push_back(node_json(tree, c));
  out["children"] = ch;
  return out;
}

template <class S>
json tree_json(const FiltrationTree<S>& tree) {
  return json{{"time_horizon", tree.horizon()}, {"dim", tree.dim()}, {"root", node_json(tree, 0)}};
}

std::vector<Rational> read_params(const json& j) {
  std::vector<Rational> out;
  if (!j.contains("params")) return out;
  if (!j["params"].is_array()) throw ParseError("\"params\" must be an array");
  for (const auto& p : j["params"]) out.push_back(exact_number(p, "params"));
  return out;
}

}  // namespace

LoadedTree tree_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("tree document must be a JSON object");
  const int horizon = read_int(j, "time_horizon");
  const int dim = read_int(j, "dim");
  if (!j.contains("root") || !j["root"].is_object()) throw ParseError("missing \"root\" object");
  LoadedTree out;
  out.exact = has_rational_string(j["root"]);
  if (out.exact) {
    out.exact_tree = read_tree<Rational>(j, horizon, dim);
    out.tree = to_float(out.exact_tree);
  } else {
    out.tree = read_tree<double>(j, horizon, dim);
  }
  return out;
}

LoadedTree load_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return tree_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

LoadedTree validated(const LoadedTree& t) {
  LoadedTree out;
  out.exact = t.exact;
  if (t.exact) {
    out.exact_tree = validated(t.exact_tree);
    out.tree = to_float(out.exact_tree);
  } else {
    out.tree = validated(t.tree);
  }
  return out;
}

json tree_to_json(const ExactTree& tree) { return tree_json(tree); }
json tree_to_json(const Tree& tree) { return tree_json(tree); }

AdaptedFunctional functional_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("functional must be a single-key object");
  if (j.contains("coord")) {
    const auto& c = j["coord"];
    if (!c.contains("times") || !c["times"].is_array()) throw ParseError("coord needs \"times\"");
    if (!c.contains("map") || !c["map"].is_string()) throw ParseError("coord needs \"map\"");
    return AdaptedFunctional::coord(c["times"].get<std::vector<int>>(),
                                    MapSpec::from_name(c["map"].get<std::string>(), read_params(c)));
  }
  if (j.contains("compose")) {
    const auto& c = j["compose"];
    if (!c.contains("map") || !c["map"].is_string()) throw ParseError("compose needs \"map\"");
    if (!c.contains("args") || !c["args"].is_array()) throw ParseError("compose needs \"args\"");
    std::vector<AdaptedFunctional> args;
    for (const auto& a : c["args"]) args.push_back(functional_from_json(a));
    return AdaptedFunctional::compose(
        MapSpec::from_name(c["map"].get<std::string>(), read_params(c)), std::move(args));
  }
  if (j.contains("cond_exp")) {
    const auto& c = j["cond_exp"];
    if (!c.contains("time") || !c["time"].is_number_integer())
      throw ParseError("cond_exp needs an integer \"time\"");
    if (!c.contains("arg")) throw ParseError("cond_exp needs \"arg\"");
    return AdaptedFunctional::cond_exp(functional_from_json(c["arg"]), c["time"].get<int>());
  }
  throw ParseError("unknown functional node '" + j.begin().key() + "'");
}

json functional_to_json(const AdaptedFunctional& af) {
  auto params = [](const MapSpec& m) {
    json p = json::array();
    for (const auto& q : m.params) p.push_back(format_rational(q));
    return p;
  };
  switch (af.kind()) {
    case AdaptedFunctional::Kind::coord_eval:
      return {{"coord", {{"times", af.times()}, {"map", af.map().name()}, {"params", params(af.map())}}}};
    case AdaptedFunctional::Kind::compose: {
      json args = json::array();
      for (const auto& a : af.args()) args.push_back(functional_to_json(a));
      return {{"compose", {{"map", af.map().name()}, {"params", params(af.map())}, {"args", args}}}};
    }
    case AdaptedFunctional::Kind::cond_exp:
      return {{"cond_exp", {{"time", af.time()}, {"arg", functional_to_json(af.args()[0])}}}};
  }
  return {};
}

}  // namespace hsig
