#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hsig/fixtures.hpp"
#include "hsig/tree_io.hpp"

using namespace hsig;
using nlohmann::json;

namespace {

bool has_message(const std::vector<Diagnostic>& diags, const std::string& needle) {
  for (const auto& d : diags)
    if (d.message.find(needle) != std::string::npos) return true;
  return false;
}

// E[E[X_4 | F_3]^2 | F_1]
AdaptedFunctional nested_square() {
  auto x4 = AdaptedFunctional::coord({4}, MapSpec::from_name("identity"));
  auto inner = AdaptedFunctional::cond_exp(x4, 3);
  auto sq = AdaptedFunctional::compose(MapSpec::from_name("power", {Rational(2)}), {inner});
  return AdaptedFunctional::cond_exp(sq, 1);
}

// Random exact tree: uniform depth, 1..3 children with rational weights.
ExactTree random_exact_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> branch(1, 3), w(1, 5), v(-4, 4);
  ExactTree t(depth, 1, {Rational(v(rng))});
  std::vector<int> frontier{0};
  for (int k = 0; k < depth; ++k) {
    std::vector<int> next;
    for (int n : frontier) {
      const int b = branch(rng);
      std::vector<int> ws(static_cast<std::size_t>(b));
      int total = 0;
      for (auto& x : ws) total += (x = w(rng));
      for (int x : ws) next.push_back(t.add_child(n, Rational(x, total), {Rational(v(rng), 3)}));
    }
    frontier = next;
  }
  return t;
}

}  // namespace

TEST_CASE("validate") {
  SUBCASE("deterministic chain") {
    ExactTree t(2, 1, {Rational(0)});
    t.add_child(t.add_child(0, Rational(1), {Rational(1)}), Rational(1), {Rational(2)});
    CHECK(validate(t).empty());
  }
  SUBCASE("row sum above one") {
    Tree t(1, 1, {0.0});
    t.add_child(0, 0.6, {1.0});
    t.add_child(0, 0.5, {2.0});
    auto diags = validate(t);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.rfind("row sum 1.1", 0) == 0);
    CHECK(diags[0].where == "root");
    CHECK_THROWS_AS(validated(t), ValidationError);
  }
  SUBCASE("exact row sum") {
    ExactTree t(1, 1, {Rational(0)});
    t.add_child(0, Rational(1, 3), {Rational(1)});
    t.add_child(0, Rational(1, 3), {Rational(2)});
    CHECK(has_message(validate(t), "row sum 2/3"));
  }
  SUBCASE("ragged depth") {
    Tree t(2, 1, {0.0});
    t.add_child(0, 0.5, {1.0});
    t.add_child(t.add_child(0, 0.5, {1.0}), 1.0, {1.0});
    auto diags = validate(t);
    CHECK(has_message(diags, "ragged depth: leaf at depth 1, expected 2"));
    CHECK(diags[0].where == "root/0");
  }
  SUBCASE("non-finite value") {
    Tree t(1, 1, {0.0});
    t.add_child(0, 1.0, {std::nan("")});
    CHECK(has_message(validate(t), "non-finite"));
  }
  SUBCASE("wrong value size") {
    Tree t(1, 2, {0.0, 0.0});
    t.add_child(0, 1.0, {1.0});
    CHECK(has_message(validate(t), "value has 1 entries, expected 2"));
  }
  SUBCASE("moment pair fixtures") {
    CHECK(validate(moment_pair_x()).empty());
    CHECK(validate(moment_pair_y()).empty());
    CHECK(moment_pair_x().leaves().size() == 16);
  }
  SUBCASE("zero-probability children are pruned") {
    Tree t(1, 1, {0.0});
    t.add_child(0, 1.0, {1.0});
    t.add_child(0, 0.0, {2.0});
    auto v = validated(t);
    CHECK(v.size() == 2);
    CHECK(v.node(1).value[0] == 1.0);
  }
}

TEST_CASE("conditional expectation") {
  const auto x = moment_pair_x();
  std::vector<Rational> x4;
  for (int leaf : x.leaves()) x4.push_back(x.node(leaf).value[0]);

  CHECK(cond_exp(x, x4, 4) == x4);
  auto full = cond_exp(x, x4, 0);
  REQUIRE(full.size() == 1);
  CHECK(full[0] == Rational(3, 2));

  auto at3 = cond_exp(x, x4, 3);
  const std::vector<Rational> want{1, 2, 1, 2, Rational(3, 2), Rational(3, 2), Rational(3, 2), Rational(3, 2)};
  CHECK(at3 == want);
  CHECK_THROWS_AS(cond_exp(x, x4, 5), ConfigError);
  CHECK_THROWS_AS(cond_exp(x, x4, -1), ConfigError);
}

TEST_CASE("tower property, constants and monotonicity (exact)") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> v(-10, 10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto tree = random_exact_tree(rng, 3);
    const auto leaves = tree.leaves();
    std::vector<Rational> f, g;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      f.push_back(Rational(v(rng), 7));
      g.push_back(f.back() + Rational(std::abs(v(rng)), 5));
    }
    for (int s = 0; s <= 3; ++s) {
      // Lift the depth-s conditional expectation back to the leaves.
      auto es = cond_exp(tree, f, s);
      auto atoms = tree.nodes_at_depth(s);
      std::vector<Rational> lifted;
      for (int leaf : leaves) {
        const int a = tree.ancestor(leaf, s);
        lifted.push_back(es[std::find(atoms.begin(), atoms.end(), a) - atoms.begin()]);
      }
      for (int t = 0; t <= s; ++t) CHECK(cond_exp(tree, lifted, t) == cond_exp(tree, f, t));

      auto c = cond_exp(tree, std::vector<Rational>(leaves.size(), Rational(7, 3)), s);
      for (const auto& x : c) CHECK(x == Rational(7, 3));
      auto eg = cond_exp(tree, g, s);
      for (std::size_t i = 0; i < es.size(); ++i) CHECK(es[i] <= eg[i]);
    }
  }
}

TEST_CASE("adapted functional values on the moment pair") {
  const auto af = nested_square();
  CHECK(af.rank() == 2);

  auto vx = eval_adapted_functional(moment_pair_x(), af);
  REQUIRE(vx.leaf_values.size() == 16);
  for (int i = 0; i < 8; ++i) CHECK(vx.leaf_values[i] == Rational(5, 2));
  for (int i = 8; i < 16; ++i) CHECK(vx.leaf_values[i] == Rational(9, 4));

  auto vy = eval_adapted_functional(moment_pair_y(), af);
  for (const auto& q : vy.leaf_values) CHECK(q == Rational(19, 8));
  CHECK(vx.expectation == vy.expectation);

  auto one = AdaptedFunctional::coord({0}, MapSpec::from_name("constant", {Rational(1)}));
  auto v1 = eval_adapted_functional(moment_pair_x(), one);
  for (const auto& q : v1.leaf_values) CHECK(q == 1);
  CHECK(v1.expectation == 1);
}

TEST_CASE("functional rank follows the nesting depth") {
  auto id = MapSpec::from_name("identity");
  auto c0 = AdaptedFunctional::coord({1, 2}, MapSpec::from_name("sum"));
  CHECK(c0.rank() == 0);
  auto e1 = AdaptedFunctional::cond_exp(c0, 1);
  CHECK(e1.rank() == 1);
  auto mix = AdaptedFunctional::compose(MapSpec::from_name("product"), {c0, e1});
  CHECK(mix.rank() == 1);
  auto e2 = AdaptedFunctional::cond_exp(mix, 0);
  CHECK(e2.rank() == 2);
  auto deep = AdaptedFunctional::compose(id, {AdaptedFunctional::cond_exp(e2, 0)});
  CHECK(deep.rank() == 3);
  CHECK(deep.max_time() == 2);
  CHECK_THROWS_AS(MapSpec::from_name("sigmoid"), ConfigError);
}

TEST_CASE("built-in maps") {
  using V = std::vector<Rational>;
  CHECK(MapSpec::from_name("affine", {Rational(2), Rational(-1), Rational(3)}).apply(V{Rational(1), Rational(4)}) == 1);
  CHECK(MapSpec::from_name("clamp", {Rational(0), Rational(1)}).apply(V{Rational(5, 2)}) == 1);
  CHECK(MapSpec::from_name("min").apply(V{Rational(3), Rational(-2)}) == -2);
  CHECK(MapSpec::from_name("max").apply(V{Rational(3), Rational(-2)}) == 3);
  CHECK(MapSpec::from_name("power", {Rational(3)}).apply(V{Rational(1, 2)}) == Rational(1, 8));
}

TEST_CASE("enumerate_paths") {
  Tree chain_tree = chain({{0.0}, {1.0}, {3.0}});
  auto cp = enumerate_paths(chain_tree);
  REQUIRE(cp.size() == 1);
  CHECK(cp[0].prob == 1.0);
  CHECK(cp[0].path[2][0] == 3.0);

  auto left = enumerate_paths(gap_process(2));
  REQUIRE(left.size() == 2);
  for (const auto& wp : left) {
    CHECK(wp.prob == Rational(1, 2));
    CHECK(wp.path[0][0] == 0);
    CHECK(abs(wp.path[1][0]) == Rational(1, 4));
    CHECK(abs(wp.path[2][0]) == 1);
    CHECK(wp.path[1][0] * wp.path[2][0] > 0);
  }

  auto ax = enumerate_paths(moment_pair_x());
  CHECK(ax.size() == 16);
  Rational total = 0;
  for (const auto& wp : ax) {
    CHECK(wp.prob == Rational(1, 16));
    total += wp.prob;
  }
  CHECK(total == 1);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto paths = enumerate_paths(random_tree(rng, {3, 3, 2, 1.0}));
    double s = 0;
    for (const auto& wp : paths) s += wp.prob;
    CHECK(std::abs(s - 1) <= 1e-12);
  }
}

TEST_CASE("json round trip") {
  const auto x = moment_pair_x();
  json j = tree_to_json(x);
  auto back = validated(tree_from_json(j));
  REQUIRE(back.exact);
  CHECK(tree_to_json(back.exact_tree) == j);
  CHECK(j["root"]["children"][0]["prob"] == "1/2");

  json f = json::parse(R"({"time_horizon": 1, "dim": 1,
    "root": {"value": [0], "children": [{"prob": 0.25, "value": [1], "children": []},
                                         {"prob": 0.75, "value": [2], "children": []}]}})");
  auto lf = tree_from_json(f);
  CHECK_FALSE(lf.exact);
  CHECK(lf.tree.node(2).prob == 0.75);

  json mixed = f;
  mixed["root"]["children"][0]["prob"] = "1/4";
  auto lm = tree_from_json(mixed);
  CHECK(lm.exact);
  CHECK(lm.exact_tree.node(2).prob == Rational(3, 4));

  json bad = f;
  bad["root"].erase("value");
  CHECK_THROWS_AS(tree_from_json(bad), ParseError);
  CHECK_THROWS_AS(tree_from_json(json::array()), ParseError);

  auto af = nested_square();
  auto af2 = functional_from_json(functional_to_json(af));
  CHECK(eval_adapted_functional(x, af2).leaf_values == eval_adapted_functional(x, af).leaf_values);
}
