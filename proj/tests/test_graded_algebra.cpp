#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hsig/graded_algebra.hpp"

using namespace hsig;

namespace {

// Oracle: rank-r words spelled out as strings, grouped by degree. A rank-r
// word is a sequence of generators; a generator is "t" or a bracketed nonempty
// rank-(r-1) word. Rank 0 words are the space letters "1".."d".
std::vector<std::set<std::string>> words_by_degree(int rank, int d, int max_degree) {
  std::vector<std::set<std::string>> gens(static_cast<std::size_t>(max_degree) + 1);
  if (rank == 1) {
    if (max_degree >= 1) {
      gens[1].insert("0");
      for (int l = 1; l <= d; ++l) gens[1].insert(std::to_string(l));
    }
  } else {
    auto lower = words_by_degree(rank - 1, d, max_degree);
    if (max_degree >= 1) gens[1].insert("t");
    for (int k = 1; k <= max_degree; ++k)
      for (const auto& w : lower[k]) gens[k].insert("[" + w + "]");
  }
  std::vector<std::set<std::string>> out(static_cast<std::size_t>(max_degree) + 1);
  out[0].insert("");
  for (int k = 1; k <= max_degree; ++k)
    for (int j = 1; j <= k; ++j)
      for (const auto& g : gens[j])
        for (const auto& tail : out[k - j]) out[k].insert(g + (tail.empty() ? "" : "." + tail));
  return out;
}

TensorR<double> random_element(std::mt19937_64& rng, const BasisPtr& b) {
  std::uniform_real_distribution<double> u(-1, 1);
  TensorR<double> t(b);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

double max_diff(const TensorR<double>& a, const TensorR<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("rank-1 basis") {
  auto b = basis_enumerate(1, 1, 1);
  CHECK(b->size() == 3);
  CHECK(b->degree_count(0) == 1);
  CHECK(b->degree_count(1) == 2);
  CHECK(b->label(1) == "(0)");
  CHECK(b->label(2) == "(1)");
}

TEST_CASE("rank-2 generators of degree 1") {
  auto b = basis_enumerate(2, 1, 3);
  CHECK(b->degree_count(1) == 3);
  CHECK(b->label(1) == "[t]");
  CHECK(b->label(2) == "[(0)]");
  CHECK(b->label(3) == "[(1)]");
  CHECK(b->degree_count(3) == 59);
}

TEST_CASE("dimension formulas") {
  const std::vector<int> r1{1, 2, 4, 8, 16, 32, 64};
  for (int k = 0; k <= 6; ++k) CHECK(dim_graded(1, 1, k) == r1[k]);
  CHECK(cumulative_dim(1, 1, 6) == 127);

  const std::vector<int> r2{1, 3, 13, 59, 269};
  for (int k = 0; k <= 4; ++k) CHECK(dim_graded(2, 1, k) == r2[k]);
  CHECK(cumulative_dim(2, 1, 3) == 76);

  // Recursion with parameter D = d + 1 = 3.
  const std::vector<int> d2{1, 4, 25, 163};
  for (int k = 0; k <= 3; ++k) CHECK(dim_graded(2, 2, k) == d2[k]);

  CHECK(cumulative_dim(1, 2, 2) == 13);
  CHECK(dim_plain_rank2(1, 3) == 4);
  CHECK(dim_plain_rank2(2, 2) == 8);
  CHECK_THROWS_AS(dim_graded(0, 1, 1), ConfigError);
}

TEST_CASE("recursion parameterization and the two indexations") {
  for (int d = 1; d <= 3; ++d)
    for (int k = 2; k <= 6; ++k) {
      const int D = d + 1;
      CHECK(dim_graded(2, d, k) == (2 * D + 1) * dim_graded(2, d, k - 1) - D * dim_graded(2, d, k - 2));
    }
  // Parameter 1 runs through 1, 2, 5, 13, 34 (odd-index Fibonacci numbers);
  // parameter 2 through 1, 3, 13, 59, 269.
  const std::vector<int> p1{1, 2, 5, 13, 34, 89};
  const std::vector<int> p2{1, 3, 13, 59, 269, 1227};
  for (int k = 0; k <= 5; ++k) {
    CHECK(rank2_recursion(1, k) == p1[k]);
    CHECK(rank2_recursion(2, k) == p2[k]);
  }
}

TEST_CASE("dimension formulas match explicit enumeration") {
  for (int r = 1; r <= 2; ++r)
    for (int d = 1; d <= 3; ++d) {
      const int M = 5;
      auto oracle = words_by_degree(r, d, M);
      auto b = basis_enumerate(r, d, M);
      for (int k = 0; k <= M; ++k) {
        CHECK(dim_graded(r, d, k) == oracle[k].size());
        CHECK(b->degree_count(k) == oracle[k].size());
      }
    }
  auto oracle3 = words_by_degree(3, 1, 4);
  auto b3 = basis_enumerate(3, 1, 4);
  const std::vector<int> r3{1, 4, 29, 227, 1790};
  for (int k = 0; k <= 4; ++k) {
    CHECK(oracle3[k].size() == static_cast<std::size_t>(r3[k]));
    CHECK(b3->degree_count(k) == oracle3[k].size());
    CHECK(dim_graded(3, 1, k) == r3[k]);
  }
}

TEST_CASE("basis is degree-major and lookups round-trip") {
  auto b = basis_enumerate(2, 2, 3);
  for (std::size_t i = 1; i < b->size(); ++i) CHECK(b->degree(i - 1) <= b->degree(i));
  for (std::size_t i = 0; i < b->size(); ++i) CHECK(b->find(b->generators(i)) == i);
  std::set<std::string> labels;
  for (std::size_t i = 0; i < b->size(); ++i) labels.insert(b->label(i));
  CHECK(labels.size() == b->size());
}

TEST_CASE("product examples") {
  auto b = GradedBasis::get(2, 1, 2);
  const auto tau = b->generator_word(0);
  const int g = static_cast<int>(b->lower()->generator_word(1));  // the rank-1 word (1)
  const auto gw = b->generator_word(g);
  TensorR<double> a = TensorR<double>::unit(b), c = TensorR<double>::unit(b);
  a[tau] = 1;
  c[gw] = 1;
  auto p = product_r(a, c);
  int tg[2] = {0, g};
  const auto tg_idx = b->find(tg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool one = i == 0 || i == tau || i == gw || i == tg_idx;
    CHECK(p[i] == (one ? 1.0 : 0.0));
  }

  std::mt19937_64 rng(1);
  auto t = random_element(rng, b);
  CHECK(product_r(TensorR<double>::unit(b), t).coeffs() == t.coeffs());
  CHECK_THROWS_AS(product_r(t, TensorR<double>(GradedBasis::get(2, 1, 3))), ConfigError);
}

TEST_CASE("rank-1 product coincides with the tensor product") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor1<double> x(2, 3), y(2, 3);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    auto want = to_graded(tensor_product(x, y));
    CHECK(max_diff(product_r(to_graded(x), to_graded(y)), want) <= 1e-13);
    CHECK(to_tensor1(want).coeffs() == tensor_product(x, y).coeffs());
  }
}

TEST_CASE("associativity and unit at ranks 2 and 3") {
  std::mt19937_64 rng(3);
  for (auto [r, d, M] : {std::tuple{2, 1, 3}, std::tuple{2, 2, 3}, std::tuple{3, 1, 3}}) {
    auto b = GradedBasis::get(r, d, M);
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_element(rng, b), y = random_element(rng, b), z = random_element(rng, b);
      CHECK(max_diff(product_r(product_r(x, y), z), product_r(x, product_r(y, z))) <= 1e-12);
      CHECK(product_r(x, TensorR<double>::unit(b)).coeffs() == x.coeffs());
    }
  }
}

TEST_CASE("rank-1 letters embed as rank-2 generators") {
  // Word (l1..lk) maps to the rank-2 word of one-letter generators; the map is
  // an algebra morphism onto the tau-free, single-letter-generator subspace.
  const int d = 2, M = 3;
  auto b1 = GradedBasis::get(1, d, M);
  auto b2 = GradedBasis::get(2, d, M);
  auto embed = [&](const Tensor1<double>& x) {
    TensorR<double> out(b2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<int> gens;
      for (int l : x.word_at(i)) gens.push_back(static_cast<int>(b1->generator_word(l)));
      out[b2->find(gens)] = x[i];
    }
    return out;
  };
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor1<double> x(d, M), y(d, M);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    CHECK(max_diff(product_r(embed(x), embed(y)), embed(tensor_product(x, y))) <= 1e-13);
  }
}

TEST_CASE("exponential") {
  auto b = GradedBasis::get(2, 1, 2);
  std::vector<double> delta(b->lower_size(), 0.0);

  SUBCASE("pure time step") {
    auto e = exp_r(b, 1.0, delta);
    int tt[2] = {0, 0};
    CHECK(e[0] == 1);
    CHECK(e[b->generator_word(0)] == 1);
    CHECK(e[b->find(tt)] == 0.5);
    double rest = 0;
    for (std::size_t i = 0; i < e.size(); ++i) rest += std::abs(e[i]);
    CHECK(rest == doctest::Approx(2.5));
  }
  SUBCASE("single degree-1 generator") {
    const int g = static_cast<int>(b->lower()->generator_word(1));
    delta[g] = 1;
    auto e = exp_r(b, 1.0, delta);
    auto at = [&](std::vector<int> gens) { return e[b->find(gens)]; };
    CHECK(at({}) == 1);
    CHECK(at({0}) == 1);
    CHECK(at({g}) == 1);
    CHECK(at({0, 0}) == 0.5);
    CHECK(at({0, g}) == 0.5);
    CHECK(at({g, 0}) == 0.5);
    CHECK(at({g, g}) == 0.5);
    double total = 0;
    for (double x : e.coeffs()) total += x;
    CHECK(total == doctest::Approx(5));
  }
  SUBCASE("M = 0") {
    auto e = exp_r(GradedBasis::get(2, 1, 0), 1.0, std::vector<double>(1, 0.0));
    CHECK(e.size() == 1);
    CHECK(e[0] == 1);
  }
  SUBCASE("nonzero unit coefficient is rejected") {
    delta[0] = 1;
    CHECK_THROWS_AS(exp_r(b, 1.0, delta), ConfigError);
  }
}

TEST_CASE("dilation is a morphism at rank 2") {
  std::mt19937_64 rng(6);
  auto b = GradedBasis::get(2, 1, 3);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_element(rng, b), y = random_element(rng, b);
    const double lam = 0.5 + 0.2 * trial;
    CHECK(max_diff(dilate(product_r(x, y), lam), product_r(dilate(x, lam), dilate(y, lam))) <= 1e-12);
  }
}
