#pragma once

// Phi_r(X) = E[X^{r+1}_0] on a filtration tree. Ranks 0 and 1 use the
// backward recursions over the tree; higher ranks (and robust normalization)
// go through the leaf-wise conditional signature process.

#include <cstddef>
#include <string>

#include "hsig/filtered_process.hpp"
#include "hsig/graded_algebra.hpp"
#include "hsig/signatures.hpp"

namespace hsig {

enum class Provenance { dp, brute_force, generic_recursion };
std::string to_string(Provenance p);

struct PhiResult {
  int rank = 0;
  int max_degree = 0;
  TensorR<double> value;  // rank + 1
  Provenance provenance = Provenance::dp;
  double elapsed_ms = 0;
  std::size_t node_visits = 0;
  std::size_t peak_stack_depth = 0;
};

struct PhiOptions {
  Normalization normalization = Normalization::none;
  NormMode norm = NormMode::hilbert;
  std::size_t memory_limit_bytes = std::size_t{2} << 30;
  std::size_t leaf_cap = 20000;
};

PhiResult expsig0_dp(const Tree& tree, int max_degree);
PhiResult expsig1_dp(const Tree& tree, int max_degree);
PhiResult phi_r(const Tree& tree, int rank, int max_degree, const PhiOptions& opts = {});

// Enumerates leaves and averages directly over the leaves below each atom.
PhiResult brute_force_phi(const Tree& tree, int rank, int max_degree, const PhiOptions& opts = {});

struct ComplexityCounters {
  std::size_t node_count = 0;
  int tree_depth = 0;
  std::size_t node_visits = 0;
  std::size_t peak_stack_depth = 0;
};
ComplexityCounters complexity_probe(const Tree& tree, int max_degree);

// Rough memory needed by phi_r; throws ResourceError above the limit.
void check_phi_budget(const Tree& tree, int rank, int max_degree, const PhiOptions& opts);

double max_abs_diff(const TensorR<double>& a, const TensorR<double>& b);

}  // namespace hsig
