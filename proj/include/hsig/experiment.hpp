#pragma once

// Classification of a two-process mixture from Phi_0 and Phi_1 features.
// For c in R:
//   X^c: X_0 = 0, X_1 = N_1,                          X_2 = c + N_2
//   Y^c: Y_0 = 0, Y_1 = sqrt(1 - eps^2) M_1 + eps c,  Y_2 = c + M_2
// with independent +-1 coins N_i, M_i. A sample picks X or Y with probability
// 1/2 (the label records which) and draws the constant C ~ N(0, 1). With
// c_atoms = K > 1 the sampled process carries K draws of C, uniform inside the
// process, so C is only learned at t = 2 by X but at t = 1 by Y.

#include <cstdint>
#include <vector>

#include "hsig/filtered_process.hpp"

namespace hsig {

struct ExperimentConfig {
  double epsilon = 1e-4;
  int n_samples = 1000;
  int n_train = 500;
  int n_test = 500;
  int trunc_phi0 = 6;
  int trunc_phi1 = 3;
  std::uint64_t seed = 42;
  int epochs = 10000;
  double lambda = 1e-3;
  int m_min = 50;
  int m_max = 500;
  int m_step = 50;
  // Draws of C carried by each sampled process; 1 fixes C per process.
  int c_atoms = 8;
};

// Throws ConfigError on inconsistent settings.
void check_config(const ExperimentConfig& cfg);

Tree mixture_process(bool is_y, double c, double epsilon);
// Process whose constant is uniform over the given draws. X learns it at
// t = 2, Y already at t = 1 through the eps * C term.
Tree mixture_process(bool is_y, const std::vector<double>& cs, double epsilon);

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // +1 for Y^c, -1 for X^c
};

// Linear max-margin classifier trained by full-batch hinge-loss subgradient
// descent with step 1/(lambda t). The bias is an extra constant feature.
class LinearSvm {
 public:
  void fit(const Dataset& data, std::size_t m, double lambda, int epochs);
  int predict(const std::vector<double>& x) const;
  double accuracy(const Dataset& data) const;
  const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> w_;  // last entry is the bias
};

// Per-coordinate standardization with statistics of the first n rows.
// Constant coordinates map to 0.
void standardize(std::vector<std::vector<double>>& rows, std::size_t n);

struct ExperimentRow {
  int m;
  double accuracy_phi0;
  double accuracy_phi1;
};

struct ExperimentData {
  Dataset phi0;
  Dataset phi1;
};

ExperimentData build_features(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

}  // namespace hsig
