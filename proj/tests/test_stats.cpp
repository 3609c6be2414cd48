#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf/flag_complex.hpp"
#include "rcf/persistence.hpp"
#include "rcf/stats.hpp"
#include "test_support.hpp"

using namespace rcf;

namespace {

PersistenceDiagram degree_one(std::vector<PersistencePair> pairs, double cap = 1.0) {
  return PersistenceDiagram(10, 1, cap, 2, {{}, std::move(pairs)});
}

}  // namespace

TEST_CASE("square: M_1 = 2 and normalized 1/2") {
  const auto dg = compute_persistence(build_flag_filtration(testing::square(), 2, 1.0), 1);
  const auto m = max_persistence(dg, 1);
  REQUIRE(m.defined());
  CHECK(*m.max_ratio == 2.0);
  CHECK(m.normalized == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.witness.birth == 0.4);
  CHECK(m.witness.death == 0.8);
  CHECK(m.ratio_to_scale == doctest::Approx(2.0 / std::sqrt(4.0 * std::log(4.0))));
}

TEST_CASE("maximum over explicit pairs") {
  CHECK_FALSE(max_persistence(degree_one({}), 1).defined());
  const auto m = max_persistence(degree_one({{1, 0.1, 0.2, DeathKind::Finite}, {1, 0.2, 0.9, DeathKind::Finite}}), 1);
  CHECK(*m.max_ratio == doctest::Approx(4.5));
  CHECK(m.witness.birth == 0.2);
  CHECK(m.witness.death == 0.9);

  // equal ratios: the earlier birth wins
  const auto tie = max_persistence(degree_one({{1, 0.3, 0.6, DeathKind::Finite}, {1, 0.25, 0.5, DeathKind::Finite}}), 1);
  CHECK(tie.witness.birth == 0.25);

  // essential classes carry no ratio
  const auto ess = max_persistence(degree_one({{1, 0.3, INFINITY, DeathKind::Essential}}), 1);
  CHECK_FALSE(ess.defined());
}

TEST_CASE("classes alive at the cap make M_k undefined") {
  const auto dg = degree_one({{1, 0.3, 0.6, DeathKind::Finite}, {1, 0.4, INFINITY, DeathKind::EssentialAtCap}}, 0.5);
  CHECK(testing::error_code([&] { max_persistence(dg, 1); }) == ErrorCode::CapInsufficient);
  CHECK(testing::error_code([&] { max_persistence(dg, 0); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([&] { max_persistence(dg, 2); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("f_k scale") {
  CHECK(f_k(250, 1) == doctest::Approx(std::sqrt(250.0 * std::log(250.0))).epsilon(1e-12));
  CHECK(f_k(250, 1) == doctest::Approx(37.15).epsilon(1e-3));
  CHECK(f_k(150, 2) == doctest::Approx(std::pow(150.0, 1.0 / 6.0) * std::cbrt(std::log(150.0))).epsilon(1e-12));
}

TEST_CASE("rank invariant on the square") {
  const auto dg = compute_persistence(build_flag_filtration(testing::square(), 2, 1.0), 1);
  CHECK(rank_invariant(dg, {1, 0.5, 0.7}) == 1);
  CHECK(rank_invariant(dg, {1, 0.5, 0.9}) == 0);
  CHECK(rank_invariant(dg, {1, 0.3, 0.5}) == 0);
  CHECK(testing::error_code([&] { rank_invariant(dg, {1, 0.7, 0.5}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("rank invariant: diagonal and monotonicity") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto ef = sample_filtration(12, 6, i);
    const auto dg = compute_persistence(build_flag_filtration(ef, 3, 1.0), 2);
    for (int q = 0; q < 20; ++q) {
      double a = unit(gen), b = unit(gen), c = unit(gen), d = unit(gen);
      if (a > b) std::swap(a, b);
      for (std::uint32_t k = 0; k <= 2; ++k) {
        CHECK(rank_invariant(dg, {k, a, a}) == betti_at(dg, k, a));
        // shrinking [p1, p2] can only raise the rank
        const double lo = a + (b - a) * std::min(c, d), hi = a + (b - a) * std::max(c, d);
        CHECK(rank_invariant(dg, {k, a, b}) <= rank_invariant(dg, {k, lo, hi}));
        CHECK(rank_invariant(dg, {k, a, b}) <= std::min(betti_at(dg, k, a), betti_at(dg, k, b)));
      }
    }
  }
}

TEST_CASE("expected Betti numbers") {
  CHECK(expected_betti(100, 1, 0.05) == doctest::Approx(247.5).epsilon(1e-12));
  CHECK(expected_betti(10, 2, 0.5) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(expected_betti(50, 1, 1e-300) == doctest::Approx(0.0));
  CHECK(expected_betti(40, 3, 0.3) == doctest::Approx(oracle::binomial(40, 4) * std::pow(0.3, 6)).epsilon(1e-12));
  CHECK(testing::error_code([] { expected_betti(2, 1, 0.5); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("threshold scales") {
  CHECK(thresholds(100, 1, 0.5).birth_scale == doctest::Approx(0.01));
  CHECK(thresholds(250, 1, 0.5).death_scale == doctest::Approx(std::sqrt(2.0 * std::log(250.0) / 250.0)));
  CHECK(thresholds(250, 1, 0.5).death_scale == doctest::Approx(0.210).epsilon(1e-3));
  CHECK(thresholds(150, 2, 0.5).birth_scale == doctest::Approx(1.0 / std::sqrt(150.0)));
}
