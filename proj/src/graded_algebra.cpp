#include "hsig/graded_algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace hsig {

std::shared_ptr<const GradedBasis> GradedBasis::get(int rank, int dim, int max_degree) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const GradedBasis>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({rank, dim, max_degree});
    if (it != cache.end()) return it->second;
  }
  // Built outside the lock: construction recurses into get() for the lower rank.
  auto b = std::make_shared<const GradedBasis>(rank, dim, max_degree);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(std::make_tuple(rank, dim, max_degree), b);
  return it->second;
}

GradedBasis::GradedBasis(int rank, int dim, int max_degree)
    : rank_(rank), dim_(dim), max_degree_(max_degree) {
  if (rank < 1) throw ConfigError("rank must be at least 1");
  if (dim < 1) throw ConfigError("dimension must be at least 1");
  if (max_degree < 0) throw ConfigError("truncation degree must be nonnegative");
  if (rank >= 2) lower_ = get(rank - 1, dim, max_degree);

  const int ngen = rank == 1 ? dim + 1 : static_cast<int>(lower_->size());
  // generator 0 is tau; at rank >= 2 ids 1..ngen-1 mirror the lower basis.
  std::vector<std::vector<int>> gens_by_degree(static_cast<std::size_t>(max_degree) + 1);
  for (int g = 0; g < ngen; ++g) {
    int deg = generator_degree(g);
    if (deg <= max_degree) gens_by_degree[deg].push_back(g);
  }

  // Word i occupies gens_[start_[i], start_[i+1]).
  start_.push_back(0);
  offsets_.push_back(0);
  degree_.push_back(0);  // unit
  start_.push_back(0);
  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(max_degree) + 1);
  by_degree[0].push_back(0);
  for (int k = 1; k <= max_degree; ++k) {
    offsets_.push_back(degree_.size());
    // Lexicographic in generator ids: first generator ascending, then tail.
    std::vector<std::pair<int, int>> firsts;  // (generator, degree)
    for (int j = 1; j <= k; ++j)
      for (int g : gens_by_degree[j]) firsts.emplace_back(g, j);
    std::sort(firsts.begin(), firsts.end());
    for (auto [g, j] : firsts) {
      for (std::size_t tail : by_degree[k - j]) {
        auto t = generators(tail);
        std::vector<int> tail_copy(t.begin(), t.end());
        gens_.push_back(g);
        gens_.insert(gens_.end(), tail_copy.begin(), tail_copy.end());
        by_degree[k].push_back(degree_.size());
        degree_.push_back(k);
        start_.push_back(gens_.size());
      }
    }
  }
  offsets_.push_back(degree_.size());

  for (std::size_t i = 0; i < size(); ++i) index_.emplace(key(generators(i)), i);

  gen_word_.assign(static_cast<std::size_t>(ngen), npos);
  for (int g = 0; g < ngen; ++g) {
    int one[1] = {g};
    gen_word_[g] = find(one);
  }

  row_.push_back(0);
  std::vector<int> buf;
  for (std::size_t u = 0; u < size(); ++u) {
    const int du = degree_[u];
    for (std::size_t v = 0; v < offsets_[max_degree - du + 1]; ++v) {
      buf.assign(generators(u).begin(), generators(u).end());
      auto gv = generators(v);
      buf.insert(buf.end(), gv.begin(), gv.end());
      table_.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(find(buf))});
    }
    row_.push_back(table_.size());
  }
}

std::string GradedBasis::key(std::span<const int> gens) const {
  return std::string(reinterpret_cast<const char*>(gens.data()), gens.size() * sizeof(int));
}

std::size_t GradedBasis::find(std::span<const int> gens) const {
  auto it = index_.find(key(gens));
  return it == index_.end() ? npos : it->second;
}

std::string GradedBasis::label(std::size_t i) const {
  auto g = generators(i);
  if (rank_ == 1) {
    Word w(g.begin(), g.end());
    return word_label(w);
  }
  std::string s = "[";
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j) s += ',';
    s += g[j] == 0 ? std::string("t") : lower_->label(static_cast<std::size_t>(g[j]));
  }
  return s + "]";
}

BasisPtr basis_enumerate(int rank, int dim, int max_degree) {
  return GradedBasis::get(rank, dim, max_degree);
}

BigInt rank2_recursion(int param, int k) {
  if (k < 0) throw ConfigError("negative degree");
  BigInt a0 = 1, a1 = param + 1;
  if (k == 0) return a0;
  for (int i = 2; i <= k; ++i) {
    BigInt a2 = BigInt(2 * param + 1) * a1 - BigInt(param) * a0;
    a0 = a1;
    a1 = a2;
  }
  return a1;
}

BigInt count_by_generators(int rank, int dim, int k) {
  if (rank < 1 || dim < 1 || k < 0) throw ConfigError("invalid dimension query");
  // counts[j] for the current rank, j = 0..k
  std::vector<BigInt> lower(static_cast<std::size_t>(k) + 1, 0);
  if (k >= 1) lower[1] = dim;  // rank 0: the space letters
  std::vector<BigInt> cur;
  for (int r = 1; r <= rank; ++r) {
    std::vector<BigInt> gen(static_cast<std::size_t>(k) + 1, 0);
    for (int j = 1; j <= k; ++j) gen[j] = lower[j];
    if (k >= 1) gen[1] += 1;  // tau
    cur.assign(static_cast<std::size_t>(k) + 1, 0);
    cur[0] = 1;
    for (int j = 1; j <= k; ++j)
      for (int i = 1; i <= j; ++i) cur[j] += gen[i] * cur[j - i];
    lower = cur;
  }
  return cur[k];
}

BigInt dim_graded(int rank, int dim, int k) {
  if (rank < 1 || dim < 1 || k < 0) throw ConfigError("invalid dimension query");
  if (rank == 1) return boost::multiprecision::pow(BigInt(dim + 1), static_cast<unsigned>(k));
  if (rank == 2) return rank2_recursion(dim + 1, k);
  return count_by_generators(rank, dim, k);
}

BigInt cumulative_dim(int rank, int dim, int max_degree) {
  BigInt s = 0;
  for (int k = 0; k <= max_degree; ++k) s += dim_graded(rank, dim, k);
  return s;
}

BigInt dim_plain_rank2(int dim, int k) {
  if (dim < 1 || k < 0) throw ConfigError("invalid dimension query");
  if (k == 0) return 1;
  return boost::multiprecision::pow(BigInt(2 * dim), static_cast<unsigned>(k)) / 2;
}

BigInt estimate_product_terms(int rank, int dim, int max_degree) {
  std::vector<BigInt> d;
  for (int k = 0; k <= max_degree; ++k) d.push_back(dim_graded(rank, dim, k));
  BigInt s = 0;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b) s += d[a] * d[b];
  return s;
}

}  // namespace hsig
