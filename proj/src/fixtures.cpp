#include "hsig/fixtures.hpp"

#include <algorithm>
#include <functional>

namespace hsig {

namespace {

// Omega = {1..16} split by halves, quarters, pairs and singletons; X_0..X_3 = 0.
ExactTree moment_pair(const std::vector<int>& ones) {
  const Rational half(1, 2);
  ExactTree t(4, 1, {Rational(0)});
  int omega = 1;
  std::function<void(int, int)> grow = [&](int parent, int depth) {
    for (int i = 0; i < 2; ++i) {
      if (depth == 3) {
        bool one = std::find(ones.begin(), ones.end(), omega) != ones.end();
        t.add_child(parent, half, {Rational(one ? 1 : 2)});
        ++omega;
      } else {
        grow(t.add_child(parent, half, {Rational(0)}), depth + 1);
      }
    }
  };
  grow(0, 0);
  return t;
}

}  // namespace

ExactTree moment_pair_x() { return moment_pair({1, 2, 5, 6, 9, 11, 13, 15}); }
ExactTree moment_pair_y() { return moment_pair({1, 2, 5, 7, 9, 10, 13, 15}); }

ExactTree gap_process(int n) {
  if (n < 1) throw ConfigError("figure-1 needs n >= 1");
  const Rational half(1, 2), gap(1, 2 * n);
  ExactTree t(2, 1, {Rational(0)});
  int up = t.add_child(0, half, {gap});
  int down = t.add_child(0, half, {Rational(-gap)});
  t.add_child(up, Rational(1), {Rational(1)});
  t.add_child(down, Rational(1), {Rational(-1)});
  return t;
}

ExactTree gap_limit() {
  const Rational half(1, 2);
  ExactTree t(2, 1, {Rational(0)});
  int mid = t.add_child(0, Rational(1), {Rational(0)});
  t.add_child(mid, half, {Rational(1)});
  t.add_child(mid, half, {Rational(-1)});
  return t;
}

Tree chain(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw ConfigError("chain needs at least one point");
  Tree t(static_cast<int>(points.size()) - 1, static_cast<int>(points[0].size()), points[0]);
  int cur = 0;
  for (std::size_t i = 1; i < points.size(); ++i) cur = t.add_child(cur, 1.0, points[i]);
  return t;
}

Tree random_tree(std::mt19937_64& rng, const RandomTreeSpec& spec) {
  std::uniform_real_distribution<double> val(-spec.value_scale, spec.value_scale);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::uniform_int_distribution<int> branch(1, spec.max_branching);
  auto point = [&] {
    std::vector<double> v(static_cast<std::size_t>(spec.dim));
    for (auto& x : v) x = val(rng);
    return v;
  };
  Tree t(spec.depth, spec.dim, point());
  std::vector<int> frontier{0};
  for (int depth = 0; depth < spec.depth; ++depth) {
    std::vector<int> next;
    for (int n : frontier) {
      const int k = branch(rng);
      std::vector<double> w(static_cast<std::size_t>(k));
      double total = 0;
      for (auto& x : w) total += (x = weight(rng));
      for (int i = 0; i < k; ++i) next.push_back(t.add_child(n, w[i] / total, point()));
    }
    frontier = std::move(next);
  }
  return t;
}

Tree full_tree(int branching, int depth, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  auto point = [&] {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = val(rng);
    return v;
  };
  Tree t(depth, dim, point());
  std::vector<int> frontier{0};
  for (int k = 0; k < depth; ++k) {
    std::vector<int> next;
    for (int n : frontier)
      for (int i = 0; i < branching; ++i) next.push_back(t.add_child(n, 1.0 / branching, point()));
    frontier = std::move(next);
  }
  return t;
}

}  // namespace hsig
