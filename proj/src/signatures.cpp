#include "hsig/signatures.hpp"

#include <algorithm>

namespace hsig {

double sup_norm(const Path& path) {
  double s = 0;
  for (const auto& x : path) {
    double q = 0;
    for (double v : x) q += v * v;
    s = std::max(s, std::sqrt(q));
  }
  return s;
}

Tensor1<double> robust_normalize(const Tensor1<double>& s, double path_sup_norm, NormMode mode) {
  return dilate(s, std::exp(-norm(s, mode) - path_sup_norm));
}

TensorR<double> robust_normalize(const TensorR<double>& s, double path_sup_norm, NormMode mode) {
  return dilate(s, std::exp(-norm(s, mode) - path_sup_norm));
}

Tensor1<double> robust_signature(const Path& path, int max_degree, NormMode mode) {
  return robust_normalize(signature(path, max_degree), sup_norm(path), mode);
}

double flat_norm(const std::vector<double>& flat, const GradedBasis* basis, NormMode mode) {
  if (basis == nullptr) {
    double q = 0;
    for (double v : flat) q += v * v;
    return std::sqrt(q);
  }
  TensorR<double> t(GradedBasis::get(basis->rank(), basis->dim(), basis->max_degree()));
  t.coeffs() = flat;
  return norm(t, mode);
}

}  // namespace hsig
