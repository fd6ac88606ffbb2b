#pragma once

// Discrete-time signatures. Every path is time-augmented: the increment at
// step t is (1, x(t) - x(t-1)), and the first increment is (1, x(0)), so the
// level-1 time coefficient equals the number of points in the path.

#include <cmath>
#include <string>
#include <vector>

#include "hsig/filtered_process.hpp"
#include "hsig/graded_algebra.hpp"
#include "hsig/tensor.hpp"

namespace hsig {

enum class Normalization { none, robust };

struct SignatureConfig {
  int max_degree = 2;
  Normalization normalization = Normalization::none;
  NormMode norm = NormMode::hilbert;
};

using Path = std::vector<std::vector<double>>;

template <class S>
Tensor1<S> signature(const std::vector<std::vector<S>>& path, int max_degree) {
  if (path.empty()) throw ConfigError("signature of an empty path");
  const std::size_t d = path[0].size();
  Tensor1<S> sig = Tensor1<S>::unit(static_cast<int>(d), max_degree);
  std::vector<S> inc(d + 1);
  inc[0] = S(1);
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (path[t].size() != d) throw ConfigError("path points have inconsistent dimension");
    for (std::size_t i = 0; i < d; ++i) inc[i + 1] = t == 0 ? path[0][i] : path[t][i] - path[t - 1][i];
    sig = tensor_product(sig, tensor_exp(inc, max_degree));
  }
  return sig;
}

template <class S>
Tensor1<S> expected_signature(const std::vector<WeightedPath<S>>& paths, int max_degree) {
  if (paths.empty()) throw ConfigError("expected signature of an empty law");
  S total(0);
  for (const auto& wp : paths) total += wp.prob;
  bool ok;
  if constexpr (ScalarTraits<S>::exact) {
    ok = total == S(1);
  } else {
    ok = std::abs(total - 1.0) <= 1e-12;
  }
  if (!ok) throw ConfigError("weight mismatch: probabilities sum to " + format_scalar(total));
  Tensor1<S> out(static_cast<int>(paths[0].path.at(0).size()), max_degree);
  for (const auto& wp : paths) out += signature(wp.path, max_degree) * wp.prob;
  return out;
}

double sup_norm(const Path& path);

// dilate(s, exp(-||s|| - sup_norm))
Tensor1<double> robust_normalize(const Tensor1<double>& s, double path_sup_norm,
                                 NormMode mode = NormMode::hilbert);
TensorR<double> robust_normalize(const TensorR<double>& s, double path_sup_norm,
                                 NormMode mode = NormMode::hilbert);

Tensor1<double> robust_signature(const Path& path, int max_degree, NormMode mode = NormMode::hilbert);

// Flat rank-0 value: unit slot 0 followed by the d coordinates.
template <class S>
std::vector<S> flat_point(const std::vector<S>& x) {
  std::vector<S> out;
  out.reserve(x.size() + 1);
  out.push_back(S(0));
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

// Rank-r signature of a path of flat lower-rank values (see graded_algebra.hpp).
// The unit slot of each increment is dropped; it cancels in differences and is
// not a generator for the first increment.
template <class S>
TensorR<S> signature_rank_r(const BasisPtr& basis, const std::vector<std::vector<S>>& lower_path) {
  if (lower_path.empty()) throw ConfigError("signature of an empty path");
  const std::size_t n = basis->lower_size();
  TensorR<S> sig = TensorR<S>::unit(basis);
  std::vector<S> inc(n);
  for (std::size_t t = 0; t < lower_path.size(); ++t) {
    if (lower_path[t].size() != n)
      throw ConfigError("inconsistent ranks: path value has " + std::to_string(lower_path[t].size()) +
                        " coefficients, expected " + std::to_string(n));
    for (std::size_t i = 1; i < n; ++i)
      inc[i] = t == 0 ? lower_path[0][i] : lower_path[t][i] - lower_path[t - 1][i];
    inc[0] = S(0);
    sig = product_r(sig, exp_r(basis, S(1), inc));
  }
  return sig;
}

template <class S>
TensorR<S> signature_rank_r(const std::vector<TensorR<S>>& path) {
  if (path.empty()) throw ConfigError("signature of an empty path");
  const auto& b0 = path[0].basis();
  std::vector<std::vector<S>> flat;
  for (const auto& v : path) {
    if (v.rank() != b0->rank() || v.dim() != b0->dim() || v.max_degree() != b0->max_degree())
      throw ConfigError("inconsistent ranks along the path");
    flat.push_back(v.coeffs());
  }
  return signature_rank_r(GradedBasis::get(b0->rank() + 1, b0->dim(), b0->max_degree()), flat);
}

// Norm of a flat lower-rank value; Euclidean at rank 0.
double flat_norm(const std::vector<double>& flat, const GradedBasis* basis, NormMode mode);

// X^k_t = E[S(X^{k-1}) | F_t] for k = r, at every node (indexed by node id).
// Leaf signatures are built along each branch and averaged bottom-up.
template <class S>
std::vector<TensorR<S>> conditional_signature_process(const FiltrationTree<S>& tree, int rank,
                                                      const SignatureConfig& cfg) {
  if (rank < 1) throw ConfigError("conditional signature process needs rank >= 1");
  if (cfg.max_degree < 0) throw ConfigError("truncation degree must be nonnegative");
  if constexpr (ScalarTraits<S>::exact) {
    if (cfg.normalization != Normalization::none)
      throw ConfigError("robust normalization is not available in exact arithmetic");
  }
  const auto order = tree.preorder();
  const auto leaves = tree.leaves();
  std::vector<std::vector<S>> level(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) level[i] = flat_point(tree.node(static_cast<int>(i)).value);
  const GradedBasis* lower_basis = nullptr;
  std::vector<TensorR<S>> cur;
  for (int k = 1; k <= rank; ++k) {
    auto basis = GradedBasis::get(k, tree.dim(), cfg.max_degree);
    cur.assign(tree.size(), TensorR<S>(basis));
    for (int leaf : leaves) {
      std::vector<std::vector<S>> path;
      for (int n : tree.branch(leaf)) path.push_back(level[n]);
      auto sig = signature_rank_r(basis, path);
      if constexpr (!ScalarTraits<S>::exact) {
        if (cfg.normalization == Normalization::robust) {
          double sup = 0;
          for (const auto& v : path) sup = std::max(sup, flat_norm(v, lower_basis, cfg.norm));
          sig = robust_normalize(sig, sup, cfg.norm);
        }
      }
      cur[leaf] = std::move(sig);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto& node = tree.node(*it);
      if (node.children.empty()) continue;
      S mass(0);
      for (int c : node.children) {
        cur[*it].axpy(tree.node(c).prob, cur[c]);
        mass += tree.node(c).prob;
      }
      if (mass != S(1)) cur[*it] *= S(1) / mass;
    }
    for (std::size_t i = 0; i < tree.size(); ++i) level[i] = cur[i].coeffs();
    lower_basis = basis.get();
  }
  return cur;
}

}  // namespace hsig
