#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rcf {

using Vertex = std::uint32_t;
using SimplexIndex = std::uint64_t;

// Table of binomial coefficients C(i, j) for 0 <= i <= max_n, 0 <= j <= max_k.
// Entries that do not fit in 64 bits saturate at UINT64_MAX.
class BinomialTable {
 public:
  BinomialTable(std::uint32_t max_n, std::uint32_t max_k);

  std::uint64_t operator()(std::uint32_t n, std::uint32_t k) const {
    if (k > n) return 0;
    return table_[static_cast<std::size_t>(n) * (max_k_ + 1) + k];
  }

  std::uint32_t max_n() const { return max_n_; }
  std::uint32_t max_k() const { return max_k_; }

 private:
  std::uint32_t max_n_;
  std::uint32_t max_k_;
  std::vector<std::uint64_t> table_;
};

// Rank of a strictly increasing vertex tuple (0-based) in the combinatorial
// number system: sum_i C(v_i, i + 1). For a fixed tuple length this is a
// bijection onto [0, C(n, length)).
SimplexIndex simplex_rank(std::span<const Vertex> vertices, const BinomialTable& binom);

// Inverse of simplex_rank for tuples of the given length on n vertices.
std::vector<Vertex> simplex_unrank(SimplexIndex index, std::uint32_t length, std::uint32_t n,
                                   const BinomialTable& binom);

// log C(n, k) via lgamma.
double log_binomial(double n, double k);

}  // namespace rcf
