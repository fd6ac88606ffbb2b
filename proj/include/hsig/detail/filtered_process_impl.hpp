#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace hsig {

namespace detail {

template <class S>
bool row_sum_ok(const S& sum) {
  if constexpr (ScalarTraits<S>::exact) {
    return sum == S(1);
  } else {
    return std::abs(sum - 1.0) <= 1e-12;
  }
}

template <class S>
void collect_diagnostics(const FiltrationTree<S>& tree, int n, const std::string& where,
                         std::vector<Diagnostic>& out) {
  const auto& node = tree.node(n);
  if (static_cast<int>(node.value.size()) != tree.dim())
    out.push_back({where, "value has " + std::to_string(node.value.size()) +
                              " entries, expected " + std::to_string(tree.dim())});
  for (const auto& x : node.value)
    if (!ScalarTraits<S>::is_finite(x)) {
      out.push_back({where, "non-finite value"});
      break;
    }
  if (!ScalarTraits<S>::is_finite(node.prob) || node.prob < S(0) || node.prob > S(1))
    out.push_back({where, "probability " + format_scalar(node.prob) + " outside [0, 1]"});
  if (node.children.empty()) {
    if (node.depth != tree.horizon())
      out.push_back({where, "ragged depth: leaf at depth " + std::to_string(node.depth) +
                                ", expected " + std::to_string(tree.horizon())});
    return;
  }
  if (node.depth >= tree.horizon()) {
    out.push_back({where, "node at depth " + std::to_string(node.depth) +
                              " has children beyond the time horizon " +
                              std::to_string(tree.horizon())});
    return;
  }
  S sum(0);
  for (int c : node.children) sum += tree.node(c).prob;
  if (!row_sum_ok(sum)) out.push_back({where, "row sum " + format_scalar(sum)});
  for (std::size_t i = 0; i < node.children.size(); ++i)
    collect_diagnostics(tree, node.children[i], where + "/" + std::to_string(i), out);
}

}  // namespace detail

template <class S>
std::vector<Diagnostic> validate(const FiltrationTree<S>& tree) {
  std::vector<Diagnostic> out;
  if (tree.size() == 0) {
    out.push_back({"root", "empty tree"});
    return out;
  }
  if (tree.dim() < 1) out.push_back({"root", "dimension must be at least 1"});
  if (tree.horizon() < 0) out.push_back({"root", "negative time horizon"});
  if (tree.node(0).prob != S(1)) out.push_back({"root", "root probability must be 1"});
  detail::collect_diagnostics(tree, 0, "root", out);
  return out;
}

template <class S>
FiltrationTree<S> prune_zero_probability(const FiltrationTree<S>& tree) {
  FiltrationTree<S> out(tree.horizon(), tree.dim(), tree.node(0).value);
  out.node(0).prob = tree.node(0).prob;
  std::vector<std::pair<int, int>> stack{{0, 0}};  // (old id, new id)
  while (!stack.empty()) {
    auto [old_id, new_id] = stack.back();
    stack.pop_back();
    for (int c : tree.node(old_id).children) {
      const auto& ch = tree.node(c);
      if (ch.prob == S(0)) continue;
      int id = out.add_child(new_id, ch.prob, ch.value);
      stack.emplace_back(c, id);
    }
  }
  return out;
}

template <class S>
FiltrationTree<S> validated(const FiltrationTree<S>& tree) {
  auto pruned = prune_zero_probability(tree);
  auto diags = validate(pruned);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return pruned;
}

template <class S>
std::vector<S> cond_exp(const FiltrationTree<S>& tree, const std::vector<S>& leaf_values, int t) {
  if (t < 0 || t > tree.horizon())
    throw ConfigError("time " + std::to_string(t) + " out of range [0, " +
                      std::to_string(tree.horizon()) + "]");
  auto leaves = tree.leaves();
  if (leaf_values.size() != leaves.size())
    throw ConfigError("expected " + std::to_string(leaves.size()) + " leaf values, got " +
                      std::to_string(leaf_values.size()));
  std::vector<S> val(tree.size(), S(0));
  for (std::size_t i = 0; i < leaves.size(); ++i) val[leaves[i]] = leaf_values[i];
  auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& node = tree.node(*it);
    if (node.children.empty() || node.depth < t) continue;
    S acc(0), mass(0);
    for (int c : node.children) {
      acc += tree.node(c).prob * val[c];
      mass += tree.node(c).prob;
    }
    val[*it] = acc / mass;
  }
  // Atoms above depth t are not needed; fill depth-t entries only.
  std::vector<S> out;
  for (int n : tree.nodes_at_depth(t)) out.push_back(val[n]);
  return out;
}

template <class S>
std::vector<WeightedPath<S>> enumerate_paths(const FiltrationTree<S>& tree) {
  std::vector<WeightedPath<S>> out;
  for (int leaf : tree.leaves()) {
    WeightedPath<S> wp{S(1), {}};
    for (int n : tree.branch(leaf)) {
      if (n != 0) wp.prob *= tree.node(n).prob;
      wp.path.push_back(tree.node(n).value);
    }
    out.push_back(std::move(wp));
  }
  return out;
}

template <class S>
S MapSpec::apply(const std::vector<S>& x) const {
  auto need = [&](std::size_t n) {
    if (x.size() < n)
      throw ConfigError("map '" + name() + "' needs at least " + std::to_string(n) + " inputs");
  };
  switch (kind) {
    case MapKind::constant:
      return from_rational<S>(params[0]);
    case MapKind::identity: {
      auto k = params.empty() ? std::size_t{0}
                              : static_cast<std::size_t>(params[0].convert_to<long long>());
      need(k + 1);
      return x[k];
    }
    case MapKind::power: {
      need(1);
      auto p = params[0].convert_to<long long>();
      S r(1);
      for (long long i = 0; i < p; ++i) r *= x[0];
      return r;
    }
    case MapKind::product: {
      S r(1);
      for (const auto& v : x) r *= v;
      return r;
    }
    case MapKind::sum: {
      S r(0);
      for (const auto& v : x) r += v;
      return r;
    }
    case MapKind::affine: {
      if (params.size() != x.size() + 1)
        throw ConfigError("affine map has " + std::to_string(params.size()) +
                          " parameters for " + std::to_string(x.size()) + " inputs");
      S r = from_rational<S>(params.back());
      for (std::size_t i = 0; i < x.size(); ++i) r += from_rational<S>(params[i]) * x[i];
      return r;
    }
    case MapKind::min:
      need(1);
      return *std::min_element(x.begin(), x.end());
    case MapKind::max:
      need(1);
      return *std::max_element(x.begin(), x.end());
    case MapKind::clamp: {
      need(1);
      S lo = from_rational<S>(params[0]), hi = from_rational<S>(params[1]);
      if (x[0] < lo) return lo;
      if (x[0] > hi) return hi;
      return x[0];
    }
  }
  throw ConfigError("unknown map");
}

template <class S>
FunctionalValue<S> eval_adapted_functional(const FiltrationTree<S>& tree,
                                           const AdaptedFunctional& af) {
  if (af.max_time() > tree.horizon())
    throw ConfigError("functional references time " + std::to_string(af.max_time()) +
                      " beyond horizon " + std::to_string(tree.horizon()));
  const auto leaves = tree.leaves();
  std::function<std::vector<S>(const AdaptedFunctional&)> eval =
      [&](const AdaptedFunctional& f) -> std::vector<S> {
    std::vector<S> out;
    out.reserve(leaves.size());
    switch (f.kind()) {
      case AdaptedFunctional::Kind::coord_eval:
        for (int leaf : leaves) {
          std::vector<S> x;
          for (int t : f.times()) {
            const auto& v = tree.node(tree.ancestor(leaf, t)).value;
            x.insert(x.end(), v.begin(), v.end());
          }
          out.push_back(f.map().apply(x));
        }
        break;
      case AdaptedFunctional::Kind::compose: {
        std::vector<std::vector<S>> parts;
        for (const auto& a : f.args()) parts.push_back(eval(a));
        for (std::size_t i = 0; i < leaves.size(); ++i) {
          std::vector<S> x;
          for (const auto& p : parts) x.push_back(p[i]);
          out.push_back(f.map().apply(x));
        }
        break;
      }
      case AdaptedFunctional::Kind::cond_exp: {
        auto inner = eval(f.args()[0]);
        auto atoms = tree.nodes_at_depth(f.time());
        auto vals = cond_exp(tree, inner, f.time());
        std::unordered_map<int, std::size_t> pos;
        for (std::size_t i = 0; i < atoms.size(); ++i) pos[atoms[i]] = i;
        for (int leaf : leaves) out.push_back(vals[pos.at(tree.ancestor(leaf, f.time()))]);
        break;
      }
    }
    return out;
  };
  FunctionalValue<S> result{eval(af), S(0)};
  for (std::size_t i = 0; i < leaves.size(); ++i)
    result.expectation += tree.reach_probability(leaves[i]) * result.leaf_values[i];
  return result;
}

}  // namespace hsig
