#include "rcf/stats.hpp"

#include <cmath>

#include "rcf/error.hpp"
#include "rcf/io.hpp"

namespace rcf {

MaxPersistenceResult max_persistence(const PersistenceDiagram& dg, std::uint32_t k) {
  if (k < 1) invalid_parameter("maximal persistence is defined for degrees k >= 1");
  if (dg.has_pairs_at_cap(k))
    throw Error(ErrorCode::CapInsufficient,
                "degree " + std::to_string(k) + " has classes alive at cap " + format_double(dg.w_cap()));

  MaxPersistenceResult result;
  result.k = k;
  double best = 0.0;
  for (const auto& p : dg.pairs(k)) {
    if (!p.finite()) continue;
    const double ratio = p.death / p.birth;
    // pairs are sorted by birth, so strict > keeps the earliest on ties
    if (!result.max_ratio || ratio > best) {
      best = ratio;
      result.max_ratio = ratio;
      result.witness = p;
    }
  }
  if (result.max_ratio && dg.n() >= 2) {
    result.normalized = std::log(best) / std::log(static_cast<double>(dg.n()));
    result.ratio_to_scale = best / f_k(dg.n(), k);
  }
  return result;
}

double f_k(std::uint32_t n, std::uint32_t k) {
  if (n < 2) invalid_parameter("f_k needs n >= 2");
  if (k < 1) invalid_parameter("f_k needs k >= 1");
  const double nn = n;
  return std::pow(nn, 1.0 / (static_cast<double>(k) * (k + 1))) * std::pow(std::log(nn), 1.0 / (k + 1));
}

std::size_t rank_invariant(const PersistenceDiagram& dg, const RankQuery& q) {
  if (!(q.p1 >= 0.0 && q.p1 <= q.p2)) invalid_parameter("rank query needs 0 <= p1 <= p2");
  if (q.p2 > dg.w_cap()) invalid_parameter("p2 = " + format_double(q.p2) + " exceeds the weight cap");
  std::size_t rank = 0;
  for (const auto& p : dg.pairs(q.k))
    if (p.birth <= q.p1 && p.death > q.p2) ++rank;
  return rank;
}

double expected_betti(std::uint32_t n, std::uint32_t k, double p) {
  if (n < k + 2) invalid_parameter("expected_betti needs n >= k + 2");
  if (!(p > 0.0 && p < 1.0)) invalid_parameter("expected_betti needs 0 < p < 1");
  const double edges_in_face = static_cast<double>(k + 1) * k / 2.0;
  return std::exp(log_binomial(n, k + 1) + edges_in_face * std::log(p));
}

ThresholdScales thresholds(std::uint32_t n, std::uint32_t k, double eps) {
  if (n < 2) invalid_parameter("thresholds need n >= 2");
  if (k < 1) invalid_parameter("thresholds need k >= 1");
  if (!(eps > 0.0)) invalid_parameter("thresholds need eps > 0");
  const double nn = n;
  return {std::pow(nn, -1.0 / k), std::pow((k / 2.0 + 1.0 + eps) * std::log(nn) / nn, 1.0 / (k + 1))};
}

}  // namespace rcf
