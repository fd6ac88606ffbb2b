#pragma once

#include <cstdint>
#include <random>

#include "hsig/filtered_process.hpp"

namespace hsig {

// The 16-point pair with equal rank-1 prediction laws but different
// E[E[X_4|F_3]^2 | F_1]. Leaves are omega = 1..16 in order.
ExactTree moment_pair_x();
ExactTree moment_pair_y();

// Left: 0 -> +-1/(2n) with probability 1/2, then deterministically to +-1.
// Right: 0 -> 0 -> +-1 with probability 1/2. Left converges in law to right.
ExactTree gap_process(int n);
ExactTree gap_limit();

// Deterministic chain through the given points.
Tree chain(const std::vector<std::vector<double>>& points);

struct RandomTreeSpec {
  int depth = 3;
  int max_branching = 3;
  int dim = 1;
  double value_scale = 1.0;
};

// Uniform-depth tree with 1..max_branching children per node, normalized
// uniform transition weights and uniform values in [-scale, scale].
Tree random_tree(std::mt19937_64& rng, const RandomTreeSpec& spec);

// Full b-ary tree of the given depth with uniform transitions.
Tree full_tree(int branching, int depth, int dim, std::mt19937_64& rng);

}  // namespace hsig
