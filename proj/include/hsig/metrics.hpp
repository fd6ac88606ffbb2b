#pragma once

#include <vector>

#include "hsig/dp_engine.hpp"
#include "hsig/signatures.hpp"

namespace hsig {

struct DistanceReport {
  int rank = 0;
  int max_degree = 0;
  bool normalized = false;
  NormMode norm = NormMode::hilbert;
  double value = 0;
  std::vector<double> per_degree;  // norm of the difference restricted to each degree
};

struct DistanceConfig {
  Normalization normalization = Normalization::none;
  NormMode norm = NormMode::hilbert;
  std::size_t memory_limit_bytes = std::size_t{2} << 30;
};

// ||Phi_r(A) - Phi_r(B)||
DistanceReport d_r(const Tree& a, const Tree& b, int rank, int max_degree,
                   const DistanceConfig& cfg = {});
DistanceReport distance_between(const PhiResult& a, const PhiResult& b, NormMode mode,
                                 bool normalized);

// <robust S(x), robust S(y)> - 1
double sig_kernel(const Path& x, const Path& y, int max_degree);

// Distance between the mean robust signatures of two samples.
double mmd(const std::vector<Path>& a, const std::vector<Path>& b, int max_degree);
// sqrt(mean K_aa - 2 mean K_ab + mean K_bb) with the kernel above.
double mmd_kernel_form(const std::vector<Path>& a, const std::vector<Path>& b, int max_degree);

}  // namespace hsig
