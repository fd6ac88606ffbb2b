#pragma once

// Finite adapted processes as filtration trees. Depth-t nodes are the atoms of
// F_t; each node carries the transition probability from its parent and the
// value of X_t on that atom.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hsig/error.hpp"
#include "hsig/scalar.hpp"

namespace hsig {

template <class S = double>
class FiltrationTree {
 public:
  struct Node {
    int parent = -1;
    int depth = 0;
    S prob = S(1);
    std::vector<S> value;
    std::vector<int> children;
  };

  FiltrationTree() = default;
  FiltrationTree(int time_horizon, int dim, std::vector<S> root_value)
      : horizon_(time_horizon), dim_(dim) {
    Node root;
    root.value = std::move(root_value);
    nodes_.push_back(std::move(root));
  }

  int add_child(int parent, S prob, std::vector<S> value) {
    if (parent < 0 || parent >= static_cast<int>(nodes_.size()))
      throw ConfigError("parent node out of range");
    Node n;
    n.parent = parent;
    n.depth = nodes_[parent].depth + 1;
    n.prob = std::move(prob);
    n.value = std::move(value);
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    nodes_[parent].children.push_back(id);
    return id;
  }

  int horizon() const { return horizon_; }
  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(int i) const { return nodes_[i]; }
  Node& node(int i) { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  static constexpr int root() { return 0; }

  // Preorder (parents before children, children in insertion order).
  std::vector<int> preorder() const {
    std::vector<int> out, stack{0};
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      out.push_back(n);
      const auto& ch = nodes_[n].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int n : preorder())
      if (nodes_[n].children.empty()) out.push_back(n);
    return out;
  }

  std::vector<int> nodes_at_depth(int t) const {
    std::vector<int> out;
    for (int n : preorder())
      if (nodes_[n].depth == t) out.push_back(n);
    return out;
  }

  int ancestor(int n, int depth) const {
    while (nodes_[n].depth > depth) n = nodes_[n].parent;
    return n;
  }

  // Node ids from the root down to n.
  std::vector<int> branch(int n) const {
    std::vector<int> out(static_cast<std::size_t>(nodes_[n].depth) + 1);
    for (int i = nodes_[n].depth; i >= 0; --i) {
      out[i] = n;
      n = nodes_[n].parent;
    }
    return out;
  }

  // Unconditional probability of reaching n.
  S reach_probability(int n) const {
    S p(1);
    for (; n > 0; n = nodes_[n].parent) p *= nodes_[n].prob;
    return p;
  }

 private:
  int horizon_ = 0;
  int dim_ = 0;
  std::vector<Node> nodes_;
};

using Tree = FiltrationTree<double>;
using ExactTree = FiltrationTree<Rational>;

template <class S>
FiltrationTree<double> to_float(const FiltrationTree<S>& t) {
  const auto& root = t.node(0);
  std::vector<double> rv;
  for (const auto& x : root.value) rv.push_back(to_double(x));
  FiltrationTree<double> out(t.horizon(), t.dim(), rv);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto& n = t.node(static_cast<int>(i));
    std::vector<double> v;
    for (const auto& x : n.value) v.push_back(to_double(x));
    out.add_child(n.parent, to_double(n.prob), std::move(v));
  }
  return out;
}

// Checks stochastic rows, uniform depth, value shape and finiteness.
template <class S>
std::vector<Diagnostic> validate(const FiltrationTree<S>& tree);

// Removes zero-probability children and their subtrees.
template <class S>
FiltrationTree<S> prune_zero_probability(const FiltrationTree<S>& tree);

// prune_zero_probability, then validate; throws ValidationError on diagnostics.
template <class S>
FiltrationTree<S> validated(const FiltrationTree<S>& tree);

// Conditional expectation of a leaf function (indexed like leaves()) given F_t.
// Result is indexed like nodes_at_depth(t).
template <class S>
std::vector<S> cond_exp(const FiltrationTree<S>& tree, const std::vector<S>& leaf_values, int t);

template <class S>
struct WeightedPath {
  S prob;
  std::vector<std::vector<S>> path;  // path[t] in R^d
};

template <class S>
std::vector<WeightedPath<S>> enumerate_paths(const FiltrationTree<S>& tree);

// ---------------------------------------------------------------------------
// Adapted functionals

enum class MapKind { constant, identity, power, product, sum, affine, min, max, clamp };

// A built-in bounded continuous map R^n -> R with exact parameters.
struct MapSpec {
  MapKind kind = MapKind::identity;
  std::vector<Rational> params;

  static MapSpec from_name(const std::string& name, std::vector<Rational> params = {});
  std::string name() const;

  template <class S>
  S apply(const std::vector<S>& x) const;
};

class AdaptedFunctional {
 public:
  enum class Kind { coord_eval, compose, cond_exp };

  // f(X_{t_1}, ..., X_{t_n}); f receives the concatenated value vectors.
  static AdaptedFunctional coord(std::vector<int> times, MapSpec f);
  static AdaptedFunctional compose(MapSpec f, std::vector<AdaptedFunctional> args);
  static AdaptedFunctional cond_exp(AdaptedFunctional arg, int t);

  Kind kind() const { return node_->kind; }
  const MapSpec& map() const { return node_->map; }
  const std::vector<int>& times() const { return node_->times; }
  int time() const { return node_->time; }
  const std::vector<AdaptedFunctional>& args() const { return node_->args; }

  int rank() const;
  int max_time() const;

 private:
  struct NodeData {
    Kind kind;
    MapSpec map;
    std::vector<int> times;
    int time = 0;
    std::vector<AdaptedFunctional> args;
  };
  explicit AdaptedFunctional(std::shared_ptr<const NodeData> n) : node_(std::move(n)) {}
  std::shared_ptr<const NodeData> node_;
};

template <class S>
struct FunctionalValue {
  std::vector<S> leaf_values;  // indexed like leaves()
  S expectation;
};

template <class S>
FunctionalValue<S> eval_adapted_functional(const FiltrationTree<S>& tree,
                                           const AdaptedFunctional& af);

}  // namespace hsig

#include "hsig/detail/filtered_process_impl.hpp"
