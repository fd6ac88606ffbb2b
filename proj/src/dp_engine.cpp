#include "hsig/dp_engine.hpp"

#include <chrono>
#include <map>

namespace hsig {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::dp:
      return "dp";
    case Provenance::brute_force:
      return "brute_force";
    case Provenance::generic_recursion:
      return "generic_recursion";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// (1, b - a)
std::vector<double> step(const Tree& tree, int from, int to) {
  const auto& a = tree.node(from).value;
  const auto& b = tree.node(to).value;
  std::vector<double> inc(a.size() + 1);
  inc[0] = 1;
  for (std::size_t i = 0; i < a.size(); ++i) inc[i + 1] = b[i] - a[i];
  return inc;
}

std::vector<double> root_step(const Tree& tree) {
  std::vector<double> inc{1.0};
  const auto& x = tree.node(0).value;
  inc.insert(inc.end(), x.begin(), x.end());
  return inc;
}

}  // namespace

PhiResult expsig0_dp(const Tree& tree, int max_degree) {
  const auto t0 = Clock::now();
  const int d = tree.dim();
  struct Frame {
    int node;
    std::size_t next;
    Tensor1<double> acc;
  };
  PhiResult res;
  res.rank = 0;
  res.max_degree = max_degree;
  res.provenance = Provenance::dp;

  std::vector<Frame> stack;
  stack.push_back({0, 0, Tensor1<double>(d, max_degree)});
  res.node_visits = 1;
  Tensor1<double> root_u;
  while (!stack.empty()) {
    const std::size_t top = stack.size() - 1;
    const auto& children = tree.node(stack[top].node).children;
    if (stack[top].next < children.size()) {
      const int c = children[stack[top].next++];
      stack.push_back({c, 0, Tensor1<double>(d, max_degree)});
      ++res.node_visits;
      res.peak_stack_depth = std::max(res.peak_stack_depth, stack.size() - 1);
      continue;
    }
    const int n = stack[top].node;
    Tensor1<double> u =
        children.empty() ? Tensor1<double>::unit(d, max_degree) : std::move(stack[top].acc);
    stack.pop_back();
    if (stack.empty()) {
      root_u = std::move(u);
      break;
    }
    auto& parent = stack.back();
    const double p = tree.node(n).prob;
    parent.acc += tensor_product(tensor_exp(step(tree, parent.node, n), max_degree), u) * p;
  }
  res.value = to_graded(tensor_product(tensor_exp(root_step(tree), max_degree), root_u));
  res.elapsed_ms = ms_since(t0);
  return res;
}

PhiResult expsig1_dp(const Tree& tree, int max_degree) {
  const auto t0 = Clock::now();
  const int d = tree.dim();
  const auto basis1 = GradedBasis::get(1, d, max_degree);
  const auto basis2 = GradedBasis::get(2, d, max_degree);

  struct ChildResult {
    double prob;
    Tensor1<double> step_exp;  // exp of the increment into the child
    Tensor1<double> u;         // first value function
    TensorR<double> xbar;      // X^1 at the child = s(child) (x) u(child)
    TensorR<double> v;         // second value function
  };
  struct Frame {
    int node;
    std::size_t next;
    Tensor1<double> s;         // signature of the branch up to this node
    Tensor1<double> step_exp;  // exp of the increment into this node
    std::vector<ChildResult> kids;
  };

  PhiResult res;
  res.rank = 1;
  res.max_degree = max_degree;
  res.provenance = Provenance::dp;

  std::vector<Frame> stack;
  {
    auto e = tensor_exp(root_step(tree), max_degree);
    stack.push_back({0, 0, e, e, {}});
  }
  res.node_visits = 1;
  ChildResult root;
  while (!stack.empty()) {
    const std::size_t top = stack.size() - 1;
    const auto& children = tree.node(stack[top].node).children;
    if (stack[top].next < children.size()) {
      const int c = children[stack[top].next++];
      auto e = tensor_exp(step(tree, stack[top].node, c), max_degree);
      auto s = tensor_product(stack[top].s, e);
      stack.push_back({c, 0, std::move(s), std::move(e), {}});
      ++res.node_visits;
      res.peak_stack_depth = std::max(res.peak_stack_depth, stack.size() - 1);
      continue;
    }
    Frame f = std::move(stack[top]);
    stack.pop_back();
    ChildResult out;
    out.prob = tree.node(f.node).prob;
    out.step_exp = std::move(f.step_exp);
    if (f.kids.empty()) {
      out.u = Tensor1<double>::unit(d, max_degree);
      out.v = TensorR<double>::unit(basis2);
    } else {
      out.u = Tensor1<double>(d, max_degree);
      for (const auto& k : f.kids) out.u += tensor_product(k.step_exp, k.u) * k.prob;
    }
    out.xbar = to_graded(tensor_product(f.s, out.u));
    if (!f.kids.empty()) {
      out.v = TensorR<double>(basis2);
      std::vector<double> delta(basis1->size());
      for (const auto& k : f.kids) {
        for (std::size_t i = 1; i < delta.size(); ++i) delta[i] = k.xbar[i] - out.xbar[i];
        out.v.axpy(k.prob, product_r(exp_r(basis2, 1.0, delta), k.v));
      }
    }
    if (stack.empty()) {
      root = std::move(out);
      break;
    }
    stack.back().kids.push_back(std::move(out));
  }
  std::vector<double> delta0 = root.xbar.coeffs();
  delta0[0] = 0;
  res.value = product_r(exp_r(basis2, 1.0, delta0), root.v);
  res.elapsed_ms = ms_since(t0);
  return res;
}

void check_phi_budget(const Tree& tree, int rank, int max_degree, const PhiOptions& opts) {
  if (rank < 0) throw ConfigError("rank must be nonnegative");
  if (max_degree < 0) throw ConfigError("truncation degree must be nonnegative");
  const BigInt coeffs = cumulative_dim(rank + 1, tree.dim(), max_degree);
  const BigInt terms = estimate_product_terms(rank + 1, tree.dim(), max_degree);
  const BigInt bytes = coeffs * 8 * BigInt(tree.size() + 8) + terms * 8;
  if (bytes > BigInt(opts.memory_limit_bytes))
    throw ResourceError("rank " + std::to_string(rank) + " at truncation " +
                        std::to_string(max_degree) + " needs " + coeffs.str() +
                        " coefficients per tensor and " + terms.str() +
                        " product terms (about " + bytes.str() + " bytes, limit " +
                        std::to_string(opts.memory_limit_bytes) + ")");
}

PhiResult phi_r(const Tree& tree, int rank, int max_degree, const PhiOptions& opts) {
  check_phi_budget(tree, rank, max_degree, opts);
  if (opts.normalization == Normalization::none) {
    if (rank == 0) return expsig0_dp(tree, max_degree);
    if (rank == 1) return expsig1_dp(tree, max_degree);
  }
  const auto t0 = Clock::now();
  SignatureConfig cfg{max_degree, opts.normalization, opts.norm};
  auto proc = conditional_signature_process(tree, rank + 1, cfg);
  PhiResult res;
  res.rank = rank;
  res.max_degree = max_degree;
  res.value = std::move(proc[0]);
  res.provenance = Provenance::generic_recursion;
  res.node_visits = tree.size();
  res.peak_stack_depth = static_cast<std::size_t>(tree.horizon());
  res.elapsed_ms = ms_since(t0);
  return res;
}

PhiResult brute_force_phi(const Tree& tree, int rank, int max_degree, const PhiOptions& opts) {
  if (rank < 0) throw ConfigError("rank must be nonnegative");
  const auto t0 = Clock::now();

  // Leaves and their atoms, found by explicit recursion from the root.
  struct Leaf {
    double prob;
    std::vector<int> atoms;  // atoms[t] = node id at depth t
  };
  std::vector<Leaf> leaves;
  std::vector<Leaf> frontier{{1.0, {0}}};
  while (!frontier.empty()) {
    Leaf cur = std::move(frontier.back());
    frontier.pop_back();
    const auto& node = tree.node(cur.atoms.back());
    if (node.children.empty()) {
      leaves.push_back(std::move(cur));
      if (leaves.size() > opts.leaf_cap)
        throw ResourceError("brute force: leaf cap " + std::to_string(opts.leaf_cap) + " exceeded");
      continue;
    }
    for (int c : node.children) {
      Leaf next = cur;
      next.prob *= tree.node(c).prob;
      next.atoms.push_back(c);
      frontier.push_back(std::move(next));
    }
  }

  const std::size_t L = leaves.size();
  const std::size_t T = leaves[0].atoms.size();
  // path[l][t]: flat value of the rank-(k-1) conditional process along leaf l.
  std::vector<std::vector<std::vector<double>>> path(L, std::vector<std::vector<double>>(T));
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t t = 0; t < T; ++t) path[l][t] = flat_point(tree.node(leaves[l].atoms[t]).value);

  const GradedBasis* lower_basis = nullptr;
  std::vector<std::vector<double>> sig(L);
  for (int k = 1; k <= rank + 1; ++k) {
    auto basis = GradedBasis::get(k, tree.dim(), max_degree);
    for (std::size_t l = 0; l < L; ++l) {
      auto s = signature_rank_r(basis, path[l]);
      if (opts.normalization == Normalization::robust) {
        double sup = 0;
        for (const auto& v : path[l]) sup = std::max(sup, flat_norm(v, lower_basis, opts.norm));
        s = robust_normalize(s, sup, opts.norm);
      }
      sig[l] = s.coeffs();
    }
    lower_basis = basis.get();
    if (k == rank + 1) break;
    // Conditional expectation on the atom at depth t: average over every leaf
    // sharing that atom.
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t t = 0; t < T; ++t) {
        std::vector<double> acc(basis->size(), 0.0);
        double mass = 0;
        for (std::size_t m = 0; m < L; ++m) {
          if (leaves[m].atoms[t] != leaves[l].atoms[t]) continue;
          mass += leaves[m].prob;
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += leaves[m].prob * sig[m][i];
        }
        for (auto& x : acc) x /= mass;
        path[l][t] = std::move(acc);
      }
    }
  }

  PhiResult res;
  res.rank = rank;
  res.max_degree = max_degree;
  res.provenance = Provenance::brute_force;
  res.value = TensorR<double>(GradedBasis::get(rank + 1, tree.dim(), max_degree));
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t i = 0; i < res.value.size(); ++i) res.value[i] += leaves[l].prob * sig[l][i];
  res.node_visits = L * T;
  res.elapsed_ms = ms_since(t0);
  return res;
}

ComplexityCounters complexity_probe(const Tree& tree, int max_degree) {
  auto r = expsig0_dp(tree, max_degree);
  ComplexityCounters c;
  c.node_count = tree.size();
  for (const auto& n : tree.nodes()) c.tree_depth = std::max(c.tree_depth, n.depth);
  c.node_visits = r.node_visits;
  c.peak_stack_depth = r.peak_stack_depth;
  return c;
}

double max_abs_diff(const TensorR<double>& a, const TensorR<double>& b) {
  a.check_same(b);
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace hsig
