#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "rcf/persistence.hpp"

namespace rcf {

struct MaxPersistenceResult {
  std::uint32_t k = 0;
  // Empty when the degree-k diagram has no finite pair.
  std::optional<double> max_ratio;
  PersistencePair witness;
  // log(M_k) / log(n)
  double normalized = 0.0;
  // M_k / f_k(n)
  double ratio_to_scale = 0.0;

  bool defined() const { return max_ratio.has_value(); }
};

// Largest death/birth over the finite degree-k pairs; ties go to the smaller
// birth, then to diagram order. Throws CapInsufficient if any degree-k class
// is still alive at the cap.
MaxPersistenceResult max_persistence(const PersistenceDiagram& dg, std::uint32_t k);

// n^(1/(k(k+1))) * (log n)^(1/(k+1)), natural log.
double f_k(std::uint32_t n, std::uint32_t k);

struct RankQuery {
  std::uint32_t k = 1;
  double p1 = 0.0;
  double p2 = 0.0;
};

// Rank of H_k(X(p1)) -> H_k(X(p2)): pairs with birth <= p1 and death > p2.
std::size_t rank_invariant(const PersistenceDiagram& dg, const RankQuery& q);

// C(n, k+1) p^C(k+1, 2)
double expected_betti(std::uint32_t n, std::uint32_t k, double p);

struct ThresholdScales {
  // n^(-1/k): homology in degree k starts to appear
  double birth_scale;
  // ((k/2 + 1 + eps) log n / n)^(1/(k+1)): degree-k homology has vanished
  double death_scale;
};

ThresholdScales thresholds(std::uint32_t n, std::uint32_t k, double eps);

}  // namespace rcf
