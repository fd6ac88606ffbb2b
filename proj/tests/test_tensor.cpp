#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hsig/tensor.hpp"

using namespace hsig;

namespace {

// Oracle: tensors as word -> coefficient maps, product by splitting words.
using WordMap = std::map<Word, double>;

WordMap to_map(const Tensor1<double>& t) {
  WordMap m;
  for (std::size_t i = 0; i < t.size(); ++i) m[t.word_at(i)] = t[i];
  return m;
}

WordMap map_product(const WordMap& a, const WordMap& b, int max_degree) {
  WordMap out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      if (static_cast<int>(u.size() + v.size()) > max_degree) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out[w] += x * y;
    }
  return out;
}

Tensor1<double> random_tensor(std::mt19937_64& rng, int d, int m) {
  std::uniform_real_distribution<double> u(-1, 1);
  Tensor1<double> t(d, m);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

double max_diff(const Tensor1<double>& a, const Tensor1<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("word indexing is degree-major lexicographic") {
  Tensor1<double> t(1, 3);
  CHECK(t.size() == 15);
  CHECK(t.index({}) == 0);
  CHECK(t.index({0}) == 1);
  CHECK(t.index({1}) == 2);
  CHECK(t.index({0, 0}) == 3);
  CHECK(t.index({1, 0}) == 5);
  CHECK(t.index({1, 1, 1}) == 14);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.index(t.word_at(i)) == i);
  CHECK_THROWS_AS(t.index({2}), ConfigError);
}

TEST_CASE("product examples") {
  Tensor1<double> a = Tensor1<double>::unit(1, 2), b = Tensor1<double>::unit(1, 2);
  a.at({0}) = 1;
  b.at({1}) = 1;
  auto c = tensor_product(a, b);
  CHECK(c.coeff({}) == 1);
  CHECK(c.coeff({0}) == 1);
  CHECK(c.coeff({1}) == 1);
  CHECK(c.coeff({0, 1}) == 1);
  CHECK(c.coeff({1, 0}) == 0);
  CHECK(c.coeff({0, 0}) == 0);

  Tensor1<double> e = Tensor1<double>::unit(1, 1);
  e.at({1}) = 1;
  auto sq = tensor_product(e, e);
  CHECK(sq.coeff({}) == 1);
  CHECK(sq.coeff({1}) == 2);
  CHECK(sq.coeff({0}) == 0);
}

TEST_CASE("product agrees with the word-splitting oracle") {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 3; ++d)
    for (int m = 0; m <= 4; ++m) {
      auto a = random_tensor(rng, d, m), b = random_tensor(rng, d, m);
      auto got = to_map(tensor_product(a, b));
      auto want = map_product(to_map(a), to_map(b), m);
      for (const auto& [w, x] : want) CHECK(got[w] == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("mismatched operands are configuration errors") {
  Tensor1<double> a(1, 2), b(2, 2), c(1, 3);
  CHECK_THROWS_AS(tensor_product(a, b), ConfigError);
  CHECK_THROWS_AS(tensor_product(a, c), ConfigError);
  CHECK_THROWS_AS(a + c, ConfigError);
}

TEST_CASE("unit and associativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 3, m = trial % 5;
    auto a = random_tensor(rng, d, m), b = random_tensor(rng, d, m), c = random_tensor(rng, d, m);
    auto one = Tensor1<double>::unit(d, m);
    CHECK(tensor_product(one, a).coeffs() == a.coeffs());
    CHECK(tensor_product(a, one).coeffs() == a.coeffs());
    CHECK(max_diff(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c))) <= 1e-12);
  }
}

TEST_CASE("exponential") {
  SUBCASE("zero vector gives the unit") {
    auto e = tensor_exp(std::vector<double>{0, 0, 0}, 4);
    CHECK(e.coeffs() == Tensor1<double>::unit(2, 4).coeffs());
  }
  SUBCASE("d=1, v=(1,2), M=2") {
    auto e = tensor_exp(std::vector<double>{1, 2}, 2);
    CHECK(e.coeff({0}) == 1);
    CHECK(e.coeff({1}) == 2);
    CHECK(e.coeff({0, 0}) == 0.5);
    CHECK(e.coeff({0, 1}) == 1);
    CHECK(e.coeff({1, 0}) == 1);
    CHECK(e.coeff({1, 1}) == 2);
  }
  SUBCASE("coefficient of w is prod v[w_i] / |w|!") {
    std::vector<double> v{0.5, -1.5, 2.0};
    auto e = tensor_exp(v, 3);
    CHECK(e.coeff({}) == 1);
    for (std::size_t i = 1; i < e.size(); ++i) {
      Word w = e.word_at(i);
      double want = 1;
      for (int l : w) want *= v[l];
      for (std::size_t k = 2; k <= w.size(); ++k) want /= static_cast<double>(k);
      CHECK(e[i] == doctest::Approx(want).epsilon(1e-14));
    }
  }
  SUBCASE("M = 0") { CHECK(tensor_exp(std::vector<double>{3, 4}, 0).size() == 1); }
  SUBCASE("exp(2v) = exp(v) exp(v)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v(3), v2(3);
      for (int i = 0; i < 3; ++i) v2[i] = 2 * (v[i] = u(rng));
      auto e = tensor_exp(v, 4);
      CHECK(max_diff(tensor_exp(v2, 4), tensor_product(e, e)) <= 1e-12);
    }
  }
  SUBCASE("exact arithmetic") {
    std::vector<Rational> v{Rational(1), Rational(1, 3)};
    auto e = tensor_exp(v, 3);
    CHECK(e.coeff({1, 1, 1}) == Rational(1, 162));
    CHECK(e.coeff({0, 1}) == Rational(1, 6));
  }
}

TEST_CASE("dilation") {
  Tensor1<double> t = Tensor1<double>::unit(1, 2);
  t.at({1}) = 1;
  t.at({1, 1}) = 1;
  CHECK(dilate(t, 1.0).coeffs() == t.coeffs());
  auto z = dilate(t, 0.0);
  CHECK(z.coeff({}) == 1);
  CHECK(z.coeff({1}) == 0);
  CHECK(z.coeff({1, 1}) == 0);
  auto two = dilate(t, 2.0);
  CHECK(two.coeff({1}) == 2);
  CHECK(two.coeff({1, 1}) == 4);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_tensor(rng, 2, 4), b = random_tensor(rng, 2, 4);
    const double lam = 0.3 + 0.1 * trial;
    CHECK(max_diff(dilate(tensor_product(a, b), lam), tensor_product(dilate(a, lam), dilate(b, lam))) <= 1e-12);
  }
}

TEST_CASE("norms") {
  Tensor1<double> zero(1, 2);
  CHECK(norm(zero) == 0);
  auto one = Tensor1<double>::unit(1, 2);
  CHECK(norm(one, NormMode::hilbert) == 1);
  CHECK(norm(one, NormMode::level_l1) == 1);
  Tensor1<double> t(1, 1);
  t.at({1}) = 3;
  t.at({0}) = 4;
  CHECK(norm(t) == doctest::Approx(5).epsilon(1e-15));

  Tensor1<double> s = Tensor1<double>::unit(1, 2);
  s.at({0}) = 3;
  s.at({1}) = 4;
  s.at({1, 1}) = 2;
  CHECK(norm(s, NormMode::level_l1) == doctest::Approx(1 + 5 + 2));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_tensor(rng, 2, 3), b = random_tensor(rng, 2, 3);
    for (auto mode : {NormMode::hilbert, NormMode::level_l1}) {
      CHECK(norm(a + b, mode) <= norm(a, mode) + norm(b, mode) + 1e-12);
      CHECK(norm(a * -2.5, mode) == doctest::Approx(2.5 * norm(a, mode)).epsilon(1e-12));
    }
  }
  CHECK(parse_norm_mode("level_l1") == NormMode::level_l1);
  CHECK_THROWS_AS(parse_norm_mode("sup"), ConfigError);
}

TEST_CASE("shuffle product") {
  auto s0 = shuffle_product({}, {1, 0});
  CHECK(s0.size() == 1);
  CHECK(s0.at({1, 0}) == 1);
  auto s1 = shuffle_product({1}, {1});
  CHECK(s1.size() == 1);
  CHECK(s1.at({1, 1}) == 2);
  auto s2 = shuffle_product({0}, {1});
  CHECK(s2.size() == 2);
  CHECK(s2.at({0, 1}) == 1);
  CHECK(s2.at({1, 0}) == 1);
  // multiplicities sum to the binomial coefficient
  long long total = 0;
  for (const auto& [w, c] : shuffle_product({0, 1, 1}, {1, 0})) total += c;
  CHECK(total == 10);
}

TEST_CASE("word labels") {
  CHECK(word_label({}) == "()");
  CHECK(word_label({0, 1}) == "(0,1)");
}
