#include "rcf/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "rcf/error.hpp"

namespace rcf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::CapInsufficient: return "cap-insufficient";
    case ErrorCode::EmptyHistogram: return "empty-histogram";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

BinomialTable::BinomialTable(std::uint32_t max_n, std::uint32_t max_k)
    : max_n_(max_n), max_k_(max_k), table_((std::size_t{max_n} + 1) * (max_k + 1), 0) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::size_t stride = max_k_ + 1;
  for (std::uint32_t i = 0; i <= max_n_; ++i) {
    table_[i * stride] = 1;
    for (std::uint32_t j = 1; j <= std::min(i, max_k_); ++j) {
      const std::uint64_t a = table_[(i - 1) * stride + j - 1];
      const std::uint64_t b = j <= i - 1 ? table_[(i - 1) * stride + j] : 0;
      table_[i * stride + j] = (a > kMax - b) ? kMax : a + b;
    }
  }
}

SimplexIndex simplex_rank(std::span<const Vertex> vertices, const BinomialTable& binom) {
  SimplexIndex index = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    index += binom(vertices[i], static_cast<std::uint32_t>(i + 1));
  return index;
}

std::vector<Vertex> simplex_unrank(SimplexIndex index, std::uint32_t length, std::uint32_t n,
                                   const BinomialTable& binom) {
  if (length > n || index >= binom(n, length)) invalid_parameter("simplex index out of range");
  std::vector<Vertex> vertices(length);
  std::uint32_t upper = n;
  for (std::uint32_t pos = length; pos-- > 0;) {
    // largest v < upper with C(v, pos + 1) <= index
    std::uint32_t v = upper;
    do {
      --v;
    } while (binom(v, pos + 1) > index);
    vertices[pos] = v;
    index -= binom(v, pos + 1);
    upper = v;
  }
  return vertices;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace rcf
