#include <map>

#include "persistence_internal.hpp"

namespace rcf {

PersistenceDiagram naive_reduction_oracle(const FlagFiltration& ff, std::uint32_t k_max,
                                          std::uint32_t characteristic) {
  check_persistence_args(ff, k_max, characteristic);
  const auto simplices = ff.simplices();
  const std::size_t count = simplices.size();
  const std::int64_t p = characteristic;

  std::map<std::pair<std::uint32_t, SimplexIndex>, std::size_t> position;
  for (std::size_t i = 0; i < count; ++i) position[{simplices[i].dim, simplices[i].index}] = i;

  // Dense boundary matrix, column j = boundary of simplex j.
  std::vector<std::vector<std::int64_t>> columns(count, std::vector<std::int64_t>(count, 0));
  for (std::size_t j = 0; j < count; ++j) {
    const auto& s = simplices[j];
    if (s.dim == 0) continue;
    const auto vs = ff.vertices(s);
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::vector<Vertex> facet;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != drop) facet.push_back(vs[i]);
      const std::size_t row = position.at({s.dim - 1, simplex_rank(facet, ff.binomials())});
      columns[j][row] = (drop % 2 == 0) ? 1 : p - 1;
    }
  }

  auto low = [&](std::size_t j) -> std::ptrdiff_t {
    for (std::size_t i = count; i-- > 0;)
      if (columns[j][i] != 0) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  auto inverse = [&](std::int64_t a) {
    for (std::int64_t b = 1; b < p; ++b)
      if (a * b % p == 1) return b;
    return std::int64_t{0};
  };

  for (std::size_t j = 0; j < count; ++j) {
    while (true) {
      const auto lj = low(j);
      if (lj < 0) break;
      std::ptrdiff_t other = -1;
      for (std::size_t i = 0; i < j; ++i)
        if (low(i) == lj) {
          other = static_cast<std::ptrdiff_t>(i);
          break;
        }
      if (other < 0) break;
      const auto& src = columns[static_cast<std::size_t>(other)];
      const std::int64_t factor = (columns[j][lj] * inverse(src[lj])) % p;
      for (std::size_t r = 0; r < count; ++r)
        columns[j][r] = ((columns[j][r] - factor * src[r]) % p + p) % p;
    }
  }

  std::vector<bool> is_birth_paired(count, false);
  std::vector<std::vector<PersistencePair>> pairs(k_max + 1);
  for (std::size_t j = 0; j < count; ++j) {
    const auto lj = low(j);
    if (lj < 0) continue;
    const auto& birth = simplices[static_cast<std::size_t>(lj)];
    is_birth_paired[static_cast<std::size_t>(lj)] = true;
    if (birth.dim <= k_max && birth.value < simplices[j].value)
      pairs[birth.dim].push_back({birth.dim, birth.value, simplices[j].value, DeathKind::Finite});
  }
  for (std::size_t j = 0; j < count; ++j) {
    const auto& s = simplices[j];
    if (s.dim > k_max || is_birth_paired[j] || low(j) >= 0) continue;
    pairs[s.dim].push_back(
        {s.dim, s.value, std::numeric_limits<double>::infinity(), unpaired_kind(ff, s.dim, s.index)});
  }
  return PersistenceDiagram(ff.n(), k_max, ff.w_cap(), characteristic, std::move(pairs));
}

}  // namespace rcf
