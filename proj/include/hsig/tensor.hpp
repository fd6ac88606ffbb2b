#pragma once

// Truncated tensor algebra over R^{d+1}. Letter 0 is the time coordinate,
// letters 1..d are space coordinates. Coefficients are stored densely, one
// block per degree, words in lexicographic order inside a block.

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hsig/error.hpp"
#include "hsig/scalar.hpp"

namespace hsig {

using Word = std::vector<int>;

enum class NormMode { hilbert, level_l1 };

NormMode parse_norm_mode(const std::string& name);
std::string to_string(NormMode mode);

template <class S = double>
class Tensor1 {
 public:
  Tensor1() = default;

  // Zero tensor over d space letters truncated at degree M.
  Tensor1(int dim, int max_degree) : d_(dim), m_(max_degree) {
    if (dim < 0 || max_degree < 0) throw ConfigError("negative dimension or degree");
    offsets_.resize(static_cast<std::size_t>(m_) + 2);
    std::size_t off = 0, block = 1;
    for (int k = 0; k <= m_; ++k) {
      offsets_[k] = off;
      off += block;
      block *= static_cast<std::size_t>(d_ + 1);
    }
    offsets_[m_ + 1] = off;
    c_.assign(off, S(0));
  }

  static Tensor1 unit(int dim, int max_degree) {
    Tensor1 t(dim, max_degree);
    t.c_[0] = S(1);
    return t;
  }

  int dim() const { return d_; }
  int alphabet() const { return d_ + 1; }
  int max_degree() const { return m_; }
  std::size_t size() const { return c_.size(); }

  std::size_t offset(int degree) const { return offsets_[degree]; }
  std::size_t level_size(int degree) const { return offsets_[degree + 1] - offsets_[degree]; }

  std::span<S> level(int k) { return {c_.data() + offsets_[k], level_size(k)}; }
  std::span<const S> level(int k) const { return {c_.data() + offsets_[k], level_size(k)}; }

  std::size_t index(const Word& w) const {
    if (static_cast<int>(w.size()) > m_) throw ConfigError("word longer than truncation");
    std::size_t idx = 0;
    for (int letter : w) {
      if (letter < 0 || letter > d_) throw ConfigError("letter out of range");
      idx = idx * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(letter);
    }
    return offsets_[w.size()] + idx;
  }

  Word word_at(std::size_t i) const {
    int k = 0;
    while (offsets_[k + 1] <= i) ++k;
    std::size_t idx = i - offsets_[k];
    Word w(static_cast<std::size_t>(k));
    for (int j = k - 1; j >= 0; --j) {
      w[j] = static_cast<int>(idx % static_cast<std::size_t>(d_ + 1));
      idx /= static_cast<std::size_t>(d_ + 1);
    }
    return w;
  }

  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S& at(const Word& w) { return c_[index(w)]; }
  S coeff(const Word& w) const {
    if (static_cast<int>(w.size()) > m_) return S(0);
    return c_[index(w)];
  }

  std::vector<S>& coeffs() { return c_; }
  const std::vector<S>& coeffs() const { return c_; }

  Tensor1& operator+=(const Tensor1& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Tensor1& operator-=(const Tensor1& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Tensor1& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Tensor1 operator+(Tensor1 a, const Tensor1& b) { return a += b; }
  friend Tensor1 operator-(Tensor1 a, const Tensor1& b) { return a -= b; }
  friend Tensor1 operator*(Tensor1 a, const S& s) { return a *= s; }
  friend Tensor1 operator*(const S& s, Tensor1 a) { return a *= s; }
  friend bool operator==(const Tensor1& a, const Tensor1& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.c_ == b.c_;
  }

  void check_same(const Tensor1& o) const {
    if (d_ != o.d_ || m_ != o.m_)
      throw ConfigError("tensor shape mismatch: (d=" + std::to_string(d_) + ", M=" +
                        std::to_string(m_) + ") vs (d=" + std::to_string(o.d_) +
                        ", M=" + std::to_string(o.m_) + ")");
  }

 private:
  int d_ = 0;
  int m_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<S> c_;
};

template <class S>
Tensor1<S> tensor_product(const Tensor1<S>& a, const Tensor1<S>& b) {
  a.check_same(b);
  const int m = a.max_degree();
  Tensor1<S> out(a.dim(), m);
  for (int k = 0; k <= m; ++k) {
    auto dst = out.level(k);
    for (int i = 0; i <= k; ++i) {
      auto la = a.level(i);
      auto lb = b.level(k - i);
      const std::size_t nb = lb.size();
      for (std::size_t u = 0; u < la.size(); ++u) {
        if (la[u] == S(0)) continue;
        S* row = dst.data() + u * nb;
        for (std::size_t v = 0; v < nb; ++v) row[v] += la[u] * lb[v];
      }
    }
  }
  return out;
}

// exp(v) = sum_m v^{(x)m} / m!, with v in R^{d+1} (v[0] is the time component).
template <class S>
Tensor1<S> tensor_exp(std::span<const S> v, int max_degree) {
  if (v.empty()) throw ConfigError("tensor_exp needs at least the time component");
  const int d = static_cast<int>(v.size()) - 1;
  Tensor1<S> out = Tensor1<S>::unit(d, max_degree);
  const std::size_t n = v.size();
  for (int k = 1; k <= max_degree; ++k) {
    auto prev = out.level(k - 1);
    auto cur = out.level(k);
    const S inv_k = S(1) / S(k);
    for (std::size_t u = 0; u < prev.size(); ++u) {
      const S base = prev[u] * inv_k;
      for (std::size_t l = 0; l < n; ++l) cur[u * n + l] = base * v[l];
    }
  }
  return out;
}

template <class S>
Tensor1<S> tensor_exp(const std::vector<S>& v, int max_degree) {
  return tensor_exp(std::span<const S>(v), max_degree);
}

template <class S>
Tensor1<S> dilate(Tensor1<S> t, const S& lambda) {
  S f(1);
  for (int k = 1; k <= t.max_degree(); ++k) {
    f *= lambda;
    for (auto& x : t.level(k)) x *= f;
  }
  return t;
}

template <class S>
std::vector<double> level_norms(const Tensor1<S>& t) {
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
double norm(const Tensor1<S>& t, NormMode mode = NormMode::hilbert) {
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
S inner(const Tensor1<S>& a, const Tensor1<S>& b) {
  a.check_same(b);
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// All interleavings of u and v, with multiplicity.
std::map<Word, long long> shuffle_product(const Word& u, const Word& v);

std::string word_label(const Word& w);

}  // namespace hsig
