#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf/flag_complex.hpp"
#include "test_support.hpp"

using namespace rcf;

namespace {

std::vector<Vertex> one_based(const FlagFiltration& ff, const FilteredSimplex& s) {
  auto vs = ff.vertices(s);
  for (auto& v : vs) ++v;
  return vs;
}

}  // namespace

TEST_CASE("triangle filtration with and without a cap") {
  const auto ef = testing::from_rows(3, {{{1, 2}, 0.1}, {{1, 3}, 0.2}, {{2, 3}, 0.8}});
  const auto ff = build_flag_filtration(ef, 2, 1.0);
  REQUIRE(ff.simplices().size() == 7);
  CHECK(ff.count(0) == 3);
  CHECK(ff.count(1) == 3);
  CHECK(ff.count(2) == 1);
  const auto s = ff.simplices();
  for (int i = 0; i < 3; ++i) CHECK(s[i].value == 0.0);
  CHECK(s[3].value == 0.1);
  CHECK(s[4].value == 0.2);
  CHECK(s[5].value == 0.8);
  CHECK(s[5].dim == 1);
  CHECK(s[6].value == 0.8);
  CHECK(one_based(ff, s[6]) == std::vector<Vertex>{1, 2, 3});
  CHECK(ff.complete());

  const auto capped = build_flag_filtration(ef, 2, 0.5);
  CHECK(capped.simplices().size() == 5);
  CHECK(one_based(capped, capped.simplices()[3]) == std::vector<Vertex>{1, 2});
  CHECK(one_based(capped, capped.simplices()[4]) == std::vector<Vertex>{1, 3});
  CHECK_FALSE(capped.complete());
}

TEST_CASE("square: triangles appear with their last edge") {
  const auto ff = build_flag_filtration(testing::square(), 2, 1.0);
  CHECK(ff.count(3) == 0);
  std::vector<std::pair<std::vector<Vertex>, double>> triangles;
  for (const auto& s : ff.simplices())
    if (s.dim == 2) triangles.emplace_back(one_based(ff, s), s.value);
  const std::vector<std::pair<std::vector<Vertex>, double>> expected{
      {{1, 2, 3}, 0.8}, {{1, 3, 4}, 0.8}, {{1, 2, 4}, 0.9}, {{2, 3, 4}, 0.9}};
  CHECK(triangles == expected);
}

TEST_CASE("simplex values") {
  const auto ef = testing::from_rows(5, {{{1, 2}, 0.1}, {{1, 3}, 0.2}, {{2, 3}, 0.8}}, 0.3);
  CHECK(simplex_value(ef, Simplex({4})) == 0.0);
  CHECK(simplex_value(ef, Simplex({0, 1})) == 0.1);
  CHECK(simplex_value(ef, Simplex({0, 1, 2})) == 0.8);
  CHECK(testing::error_code([] { Simplex({2, 1}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { Simplex({}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("clique enumeration matches bitmask enumeration for n <= 8") {
  for (std::uint32_t n = 1; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto ef = sample_filtration(n, 31 + seed, n);
      for (double cap : {0.2, 0.5, 0.75, 1.0})
        for (std::uint32_t max_dim = 0; max_dim <= 7; ++max_dim) {
          const auto ff = build_flag_filtration(ef, max_dim, cap);
          const auto expected = oracle::cliques(ef, cap, static_cast<int>(max_dim));
          for (std::uint32_t d = 0; d <= max_dim; ++d) {
            std::vector<std::pair<oracle::Mask, double>> got, want;
            for (const auto& s : ff.simplices())
              if (s.dim == d) {
                oracle::Mask m = 0;
                for (Vertex v : ff.vertices(s)) m |= oracle::Mask{1} << v;
                got.emplace_back(m, s.value);
              }
            for (const auto& c : expected[d]) want.emplace_back(c.vertices, c.value);
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
          }
          CHECK(std::is_sorted(ff.simplices().begin(), ff.simplices().end(), canonical_less));
        }
    }
}

TEST_CASE("faces precede cofaces") {
  const auto ef = sample_filtration(12, 8, 0);
  const auto ff = build_flag_filtration(ef, 3, 0.6);
  const auto& b = ff.binomials();
  std::vector<std::vector<SimplexIndex>> seen(4);
  for (const auto& s : ff.simplices()) {
    const auto vs = ff.vertices(s);
    if (s.dim > 0)
      for (std::size_t drop = 0; drop < vs.size(); ++drop) {
        auto face = vs;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        const auto idx = simplex_rank(face, b);
        CHECK(std::find(seen[s.dim - 1].begin(), seen[s.dim - 1].end(), idx) != seen[s.dim - 1].end());
      }
    seen[s.dim].push_back(s.index);
  }
}

TEST_CASE("adaptive cap") {
  CHECK(adaptive_cap(2, 1, 2.0) == 1.0);
  CHECK(adaptive_cap(3, 5, 0.1) == 1.0);
  CHECK(adaptive_cap(2, 1, 0.1) == doctest::Approx(std::sqrt(0.8 * std::log(2.0))).epsilon(1e-12));
  const double direct = std::sqrt(1.6 * std::log(250.0) / 250.0);
  CHECK(adaptive_cap(250, 1, 0.1) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(adaptive_cap(250, 1, 0.1) == doctest::Approx(0.1880).epsilon(5e-4));
  CHECK(adaptive_cap(150, 2, 0.5) == doctest::Approx(std::cbrt(2.5 * std::log(150.0) / 150.0)).epsilon(1e-12));
  CHECK(testing::error_code([] { adaptive_cap(1, 1, 0.1); }).has_value());
}

TEST_CASE("text export lists one simplex per line") {
  const auto ef = testing::from_rows(3, {{{1, 2}, 0.25}, {{1, 3}, 0.5}, {{2, 3}, 0.75}});
  const auto text = flag_filtration_to_text(build_flag_filtration(ef, 2, 1.0));
  CHECK(text == "0 1\n0 2\n0 3\n0.25 1 2\n0.5 1 3\n0.75 2 3\n0.75 1 2 3\n");
}

TEST_CASE("invalid caps are rejected") {
  const auto ef = sample_filtration(4, 1, 1);
  CHECK(testing::error_code([&] { build_flag_filtration(ef, 2, 0.0); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([&] { build_flag_filtration(ef, 2, 1.5); }) == ErrorCode::InvalidParameter);
}
