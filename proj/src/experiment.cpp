#include "hsig/experiment.hpp"

#include <cmath>
#include <random>

#include "hsig/dp_engine.hpp"
#include "hsig/parallel.hpp"

namespace hsig {

void check_config(const ExperimentConfig& cfg) {
  if (cfg.n_samples <= 0) throw ConfigError("n_samples must be positive");
  if (cfg.n_train <= 0 || cfg.n_test <= 0) throw ConfigError("train and test sizes must be positive");
  if (cfg.n_train + cfg.n_test != cfg.n_samples)
    throw ConfigError("train + test sizes must equal n_samples");
  if (!(cfg.epsilon > 0) || cfg.epsilon >= 1) throw ConfigError("epsilon must lie in (0, 1)");
  if (cfg.trunc_phi0 < 0 || cfg.trunc_phi1 < 0) throw ConfigError("negative truncation");
  if (cfg.c_atoms <= 0) throw ConfigError("c_atoms must be positive");
  if (cfg.epochs <= 0) throw ConfigError("epochs must be positive");
  if (!(cfg.lambda > 0)) throw ConfigError("lambda must be positive");
  if (cfg.m_min <= 0 || cfg.m_step <= 0 || cfg.m_min > cfg.m_max || cfg.m_max > cfg.n_train)
    throw ConfigError("training sizes must satisfy 0 < m_min <= m_max <= n_train");
}

Tree mixture_process(bool is_y, double c, double epsilon) {
  return mixture_process(is_y, std::vector<double>{c}, epsilon);
}

Tree mixture_process(bool is_y, const std::vector<double>& cs, double epsilon) {
  if (cs.empty()) throw ConfigError("mixture process needs at least one value of C");
  Tree t(2, 1, {0.0});
  const double a = std::sqrt(1 - epsilon * epsilon);
  const double w = 1.0 / static_cast<double>(cs.size());
  for (double coin : {1.0, -1.0}) {
    if (is_y) {
      for (double c : cs) {
        const int n = t.add_child(0, 0.5 * w, {a * coin + epsilon * c});
        t.add_child(n, 0.5, {c + 1});
        t.add_child(n, 0.5, {c - 1});
      }
    } else {
      const int n = t.add_child(0, 0.5, {coin});
      for (double c : cs) {
        t.add_child(n, 0.5 * w, {c + 1});
        t.add_child(n, 0.5 * w, {c - 1});
      }
    }
  }
  return t;
}

void standardize(std::vector<std::vector<double>>& rows, std::size_t n) {
  if (rows.empty() || n == 0) return;
  const std::size_t dim = rows[0].size();
  for (std::size_t j = 0; j < dim; ++j) {
    double mean = 0;
    for (std::size_t i = 0; i < n; ++i) mean += rows[i][j];
    mean /= static_cast<double>(n);
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) var += (rows[i][j] - mean) * (rows[i][j] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    for (auto& r : rows) r[j] = constant ? 0.0 : (r[j] - mean) / sd;
  }
}

void LinearSvm::fit(const Dataset& data, std::size_t m, double lambda, int epochs) {
  const std::size_t dim = data.x.at(0).size();
  w_.assign(dim + 1, 0.0);
  std::vector<double> grad(dim + 1);
  for (int t = 1; t <= epochs; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& x = data.x[i];
      double s = w_[dim];
      for (std::size_t j = 0; j < dim; ++j) s += w_[j] * x[j];
      if (data.y[i] * s < 1) {
        for (std::size_t j = 0; j < dim; ++j) grad[j] -= data.y[i] * x[j];
        grad[dim] -= data.y[i];
      }
    }
    const double eta = 1.0 / (lambda * t);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j <= dim; ++j) w_[j] -= eta * (lambda * w_[j] + grad[j] * inv_m);
  }
}

int LinearSvm::predict(const std::vector<double>& x) const {
  const std::size_t dim = w_.size() - 1;
  double s = w_[dim];
  for (std::size_t j = 0; j < dim; ++j) s += w_[j] * x[j];
  return s >= 0 ? 1 : -1;
}

double LinearSvm::accuracy(const Dataset& data) const {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.x.size(); ++i) hits += predict(data.x[i]) == data.y[i];
  return static_cast<double>(hits) / static_cast<double>(data.x.size());
}

ExperimentData build_features(const ExperimentConfig& cfg) {
  check_config(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const auto n = static_cast<std::size_t>(cfg.n_samples);
  std::vector<std::vector<double>> cs(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < cfg.c_atoms; ++k) cs[i].push_back(normal(rng));
    labels[i] = coin(rng) ? 1 : -1;
  }
  ExperimentData out;
  out.phi0.x.resize(n);
  out.phi1.x.resize(n);
  parallel_for(n, [&](std::size_t i) {
    Tree t = mixture_process(labels[i] == 1, cs[i], cfg.epsilon);
    out.phi0.x[i] = expsig0_dp(t, cfg.trunc_phi0).value.coeffs();
    out.phi1.x[i] = expsig1_dp(t, cfg.trunc_phi1).value.coeffs();
  });
  out.phi0.y = labels;
  out.phi1.y = labels;
  return out;
}

namespace {

Dataset slice(const Dataset& d, std::size_t from, std::size_t to) {
  Dataset out;
  out.x.assign(d.x.begin() + static_cast<long>(from), d.x.begin() + static_cast<long>(to));
  out.y.assign(d.y.begin() + static_cast<long>(from), d.y.begin() + static_cast<long>(to));
  return out;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  ExperimentData data = build_features(cfg);
  const auto n_train = static_cast<std::size_t>(cfg.n_train);
  standardize(data.phi0.x, n_train);
  standardize(data.phi1.x, n_train);
  const auto n = static_cast<std::size_t>(cfg.n_samples);
  Dataset train0 = slice(data.phi0, 0, n_train), test0 = slice(data.phi0, n_train, n);
  Dataset train1 = slice(data.phi1, 0, n_train), test1 = slice(data.phi1, n_train, n);

  std::vector<ExperimentRow> rows;
  for (int m = cfg.m_min; m <= cfg.m_max; m += cfg.m_step) {
    LinearSvm s0, s1;
    s0.fit(train0, static_cast<std::size_t>(m), cfg.lambda, cfg.epochs);
    s1.fit(train1, static_cast<std::size_t>(m), cfg.lambda, cfg.epochs);
    rows.push_back({m, s0.accuracy(test0), s1.accuracy(test1)});
  }
  return rows;
}

}  // namespace hsig
