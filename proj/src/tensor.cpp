#include "hsig/tensor.hpp"

namespace hsig {

NormMode parse_norm_mode(const std::string& name) {
  if (name == "hilbert") return NormMode::hilbert;
  if (name == "level_l1") return NormMode::level_l1;
  throw ConfigError("unknown norm mode '" + name + "'");
}

std::string to_string(NormMode mode) {
  return mode == NormMode::hilbert ? "hilbert" : "level_l1";
}

namespace {

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j, Word& prefix,
                  std::map<Word, long long>& out) {
  if (i == u.size() && j == v.size()) {
    ++out[prefix];
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    shuffle_into(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    shuffle_into(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::map<Word, long long> shuffle_product(const Word& u, const Word& v) {
  std::map<Word, long long> out;
  Word prefix;
  shuffle_into(u, 0, v, 0, prefix, out);
  return out;
}

std::string word_label(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace hsig
