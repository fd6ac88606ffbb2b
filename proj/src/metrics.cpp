#include "hsig/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hsig {

DistanceReport distance_between(const PhiResult& a, const PhiResult& b, NormMode mode,
                                 bool normalized) {
  if (a.value.dim() != b.value.dim())
    throw ConfigError("dimension mismatch: " + std::to_string(a.value.dim()) + " vs " +
                      std::to_string(b.value.dim()));
  auto diff = a.value - b.value;
  DistanceReport r;
  r.rank = a.rank;
  r.max_degree = a.max_degree;
  r.normalized = normalized;
  r.norm = mode;
  r.per_degree = level_norms(diff);
  r.value = norm(diff, mode);
  return r;
}

DistanceReport d_r(const Tree& a, const Tree& b, int rank, int max_degree,
                   const DistanceConfig& cfg) {
  if (a.dim() != b.dim())
    throw ConfigError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  PhiOptions opts;
  opts.normalization = cfg.normalization;
  opts.norm = cfg.norm;
  opts.memory_limit_bytes = cfg.memory_limit_bytes;
  auto pa = phi_r(a, rank, max_degree, opts);
  auto pb = phi_r(b, rank, max_degree, opts);
  return distance_between(pa, pb, cfg.norm, cfg.normalization == Normalization::robust);
}

double sig_kernel(const Path& x, const Path& y, int max_degree) {
  if (x.empty() || y.empty() || x[0].size() != y[0].size())
    throw ConfigError("kernel arguments must be nonempty paths of the same dimension");
  return inner(robust_signature(x, max_degree), robust_signature(y, max_degree)) - 1.0;
}

namespace {

Tensor1<double> mean_feature(const std::vector<Path>& s, int max_degree) {
  if (s.empty()) throw ConfigError("empty sample");
  Tensor1<double> m(static_cast<int>(s[0].at(0).size()), max_degree);
  for (const auto& p : s) m += robust_signature(p, max_degree);
  return m * (1.0 / static_cast<double>(s.size()));
}

double mean_kernel(const std::vector<Tensor1<double>>& a, const std::vector<Tensor1<double>>& b) {
  double s = 0;
  for (const auto& x : a)
    for (const auto& y : b) s += inner(x, y) - 1.0;
  return s / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace

double mmd(const std::vector<Path>& a, const std::vector<Path>& b, int max_degree) {
  return norm(mean_feature(a, max_degree) - mean_feature(b, max_degree));
}

double mmd_kernel_form(const std::vector<Path>& a, const std::vector<Path>& b, int max_degree) {
  if (a.empty() || b.empty()) throw ConfigError("empty sample");
  std::vector<Tensor1<double>> fa, fb;
  for (const auto& p : a) fa.push_back(robust_signature(p, max_degree));
  for (const auto& p : b) fb.push_back(robust_signature(p, max_degree));
  double v = mean_kernel(fa, fa) - 2 * mean_kernel(fa, fb) + mean_kernel(fb, fb);
  return std::sqrt(std::max(v, 0.0));
}

}  // namespace hsig
