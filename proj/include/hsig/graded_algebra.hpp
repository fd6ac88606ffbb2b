#pragma once

// Rank-r truncated tensor algebra. A rank-r word is a sequence of generators;
// a generator is either the rank-r time letter tau or a nonempty rank-(r-1)
// word. At rank 1 the generators are tau and the d space letters, which makes
// the rank-1 case identical to Tensor1 (letter 0 = time).
//
// Generator ids: 0 is tau. At rank 1, ids 1..d are the space letters; at rank
// r >= 2, id g >= 1 is index g of the rank-(r-1) basis (index 0 there is the
// empty word, which is not a generator). A lower-rank element can therefore be
// passed around as its flat coefficient vector with the unit slot at index 0.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsig/error.hpp"
#include "hsig/scalar.hpp"
#include "hsig/tensor.hpp"

namespace hsig {

class GradedBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Shared, cached basis for (r, d, M).
  static std::shared_ptr<const GradedBasis> get(int rank, int dim, int max_degree);

  GradedBasis(int rank, int dim, int max_degree);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return degree_.size(); }

  int degree(std::size_t i) const { return degree_[i]; }
  std::size_t degree_offset(int k) const { return offsets_[k]; }
  std::size_t degree_count(int k) const { return offsets_[k + 1] - offsets_[k]; }

  std::span<const int> generators(std::size_t i) const {
    return {gens_.data() + start_[i], start_[i + 1] - start_[i]};
  }

  // Flat length of a lower-rank value: d+1 at rank 1, the lower basis size otherwise.
  std::size_t lower_size() const { return rank_ == 1 ? static_cast<std::size_t>(dim_) + 1 : lower_->size(); }
  const GradedBasis* lower() const { return lower_.get(); }
  std::shared_ptr<const GradedBasis> lower_ptr() const { return lower_; }

  int generator_degree(int g) const { return (rank_ == 1 || g == 0) ? 1 : lower_->degree(g); }

  std::size_t find(std::span<const int> gens) const;
  // Index of the one-generator word (g).
  std::size_t generator_word(int g) const { return gen_word_[g]; }

  std::string label(std::size_t i) const;

  // Concatenation table in CSR form: for word u, entries [row_[u], row_[u+1])
  // hold (v, index of u.v) for all v with deg u + deg v <= M.
  struct Entry {
    std::uint32_t v;
    std::uint32_t out;
  };
  std::span<const Entry> product_row(std::size_t u) const {
    return {table_.data() + row_[u], row_[u + 1] - row_[u]};
  }
  std::size_t product_terms() const { return table_.size(); }

 private:
  std::string key(std::span<const int> gens) const;

  int rank_;
  int dim_;
  int max_degree_;
  std::shared_ptr<const GradedBasis> lower_;
  std::vector<int> gens_;
  std::vector<std::size_t> start_;
  std::vector<int> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> gen_word_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> row_;
  std::vector<Entry> table_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

// Ordered basis of all rank-r words of degree <= M.
BasisPtr basis_enumerate(int rank, int dim, int max_degree);

// Number of rank-r basis words of degree exactly k. Closed forms for r <= 2,
// generator counting for r >= 3.
BigInt dim_graded(int rank, int dim, int k);
BigInt cumulative_dim(int rank, int dim, int max_degree);

// A(0)=1, A(1)=D+1, A(k) = (2D+1) A(k-1) - D A(k-2). Rank 2 over d space
// letters uses D = d+1.
BigInt rank2_recursion(int param, int k);

// Counts generator sequences of total degree k without building the basis.
BigInt count_by_generators(int rank, int dim, int k);

// Degree-k dimension of the rank-2 algebra without time letters: (2d)^k / 2.
BigInt dim_plain_rank2(int dim, int k);

// Number of (u, v) pairs a product at this size touches.
BigInt estimate_product_terms(int rank, int dim, int max_degree);

template <class S = double>
class TensorR {
 public:
  TensorR() = default;
  explicit TensorR(BasisPtr basis) : basis_(std::move(basis)), c_(basis_->size(), S(0)) {}

  static TensorR unit(BasisPtr basis) {
    TensorR t(std::move(basis));
    t.c_[0] = S(1);
    return t;
  }

  const BasisPtr& basis() const { return basis_; }
  int rank() const { return basis_->rank(); }
  int dim() const { return basis_->dim(); }
  int max_degree() const { return basis_->max_degree(); }
  std::size_t size() const { return c_.size(); }

  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  std::vector<S>& coeffs() { return c_; }
  const std::vector<S>& coeffs() const { return c_; }

  std::span<const S> level(int k) const {
    return {c_.data() + basis_->degree_offset(k), basis_->degree_count(k)};
  }

  void check_same(const TensorR& o) const {
    if (basis_ != o.basis_ &&
        (rank() != o.rank() || dim() != o.dim() || max_degree() != o.max_degree()))
      throw ConfigError("graded tensor shape mismatch: (r=" + std::to_string(rank()) +
                        ", d=" + std::to_string(dim()) + ", M=" + std::to_string(max_degree()) +
                        ") vs (r=" + std::to_string(o.rank()) + ", d=" + std::to_string(o.dim()) +
                        ", M=" + std::to_string(o.max_degree()) + ")");
  }

  TensorR& operator+=(const TensorR& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TensorR& operator-=(const TensorR& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TensorR& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  // this += s * o
  void axpy(const S& s, const TensorR& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * o.c_[i];
  }
  friend TensorR operator+(TensorR a, const TensorR& b) { return a += b; }
  friend TensorR operator-(TensorR a, const TensorR& b) { return a -= b; }
  friend TensorR operator*(TensorR a, const S& s) { return a *= s; }
  friend TensorR operator*(const S& s, TensorR a) { return a *= s; }

 private:
  BasisPtr basis_;
  std::vector<S> c_;
};

template <class S>
TensorR<S> product_r(const TensorR<S>& a, const TensorR<S>& b) {
  a.check_same(b);
  const GradedBasis& B = *a.basis();
  TensorR<S> out(a.basis());
  auto& c = out.coeffs();
  for (std::size_t u = 0; u < B.size(); ++u) {
    if (a[u] == S(0)) continue;
    const S au = a[u];
    for (const auto& e : B.product_row(u)) c[e.out] += au * b[e.v];
  }
  return out;
}

// exp(tau + delta) at rank r, where delta is a flat lower-rank value whose unit
// slot (index 0) must be zero.
template <class S>
TensorR<S> exp_r(const BasisPtr& basis, const S& tau, std::span<const S> delta) {
  const GradedBasis& B = *basis;
  if (delta.size() != B.lower_size())
    throw ConfigError("increment has " + std::to_string(delta.size()) + " coefficients, expected " +
                      std::to_string(B.lower_size()));
  if (delta[0] != S(0)) throw ConfigError("invalid increment: nonzero unit coefficient");
  // Sparse generator-span element x = tau*(0) + sum_g delta[g]*(g).
  std::vector<std::pair<std::size_t, S>> x;
  if (tau != S(0) && B.max_degree() >= 1) x.emplace_back(B.generator_word(0), tau);
  for (std::size_t g = 1; g < delta.size(); ++g)
    if (delta[g] != S(0)) x.emplace_back(B.generator_word(static_cast<int>(g)), delta[g]);

  TensorR<S> result = TensorR<S>::unit(basis);
  // Horner: exp(x) = 1 + x(1 + x/2 (1 + x/3 (...)))
  for (int m = B.max_degree(); m >= 1; --m) {
    TensorR<S> next = TensorR<S>::unit(basis);
    const S inv_m = S(1) / S(m);
    auto& c = next.coeffs();
    for (const auto& [u, xu] : x) {
      const S f = xu * inv_m;
      for (const auto& e : B.product_row(u)) c[e.out] += f * result[e.v];
    }
    result = std::move(next);
  }
  return result;
}

template <class S>
TensorR<S> exp_r(const BasisPtr& basis, const S& tau, const std::vector<S>& delta) {
  return exp_r(basis, tau, std::span<const S>(delta));
}

template <class S>
TensorR<S> dilate(TensorR<S> t, const S& lambda) {
  std::vector<S> pw(static_cast<std::size_t>(t.max_degree()) + 1, S(1));
  for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * lambda;
  const GradedBasis& B = *t.basis();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= pw[B.degree(i)];
  return t;
}

template <class S>
std::vector<double> level_norms(const TensorR<S>& t) {
  std::vector<double> out;
  for (int k = 0; k <= t.max_degree(); ++k) {
    double s = 0;
    for (const auto& x : t.level(k)) {
      double v = to_double(x);
      s += v * v;
    }
    out.push_back(std::sqrt(s));
  }
  return out;
}

template <class S>
double norm(const TensorR<S>& t, NormMode mode = NormMode::hilbert) {
  auto ln = level_norms(t);
  double s = 0;
  if (mode == NormMode::hilbert) {
    for (double x : ln) s += x * x;
    return std::sqrt(s);
  }
  for (double x : ln) s += x;
  return s;
}

template <class S>
S inner(const TensorR<S>& a, const TensorR<S>& b) {
  a.check_same(b);
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Rank-1 graded tensors and Tensor1 share one coefficient order.
template <class S>
TensorR<S> to_graded(const Tensor1<S>& t) {
  TensorR<S> out(GradedBasis::get(1, t.dim(), t.max_degree()));
  out.coeffs() = t.coeffs();
  return out;
}

template <class S>
Tensor1<S> to_tensor1(const TensorR<S>& t) {
  if (t.rank() != 1) throw ConfigError("only rank-1 graded tensors convert to Tensor1");
  Tensor1<S> out(t.dim(), t.max_degree());
  out.coeffs() = t.coeffs();
  return out;
}

}  // namespace hsig
