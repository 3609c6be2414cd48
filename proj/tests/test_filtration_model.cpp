#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rcf/filtration_model.hpp"
#include "rcf/io.hpp"
#include "test_support.hpp"

using namespace rcf;

TEST_CASE("n = 1 has no edges") {
  const auto ef = sample_filtration(1, 3, 0);
  CHECK(ef.n() == 1);
  CHECK(ef.edge_count() == 0);
}

TEST_CASE("sampling is a pure function of (seed, index)") {
  const auto a = sample_filtration(3, 11, 4);
  const auto b = sample_filtration(3, 11, 4);
  CHECK(a == b);
  CHECK(a.edge_count() == 3);
  CHECK_FALSE(a == sample_filtration(3, 11, 5));
  CHECK_FALSE(a == sample_filtration(3, 12, 4));
}

TEST_CASE("weights lie in (0, 1]") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto ef = sample_filtration(40, 5, i);
    for (double w : ef.weights()) {
      CHECK(w > 0.0);
      CHECK(w <= 1.0);
    }
  }
}

TEST_CASE("constructor validation") {
  CHECK(testing::error_code([] { EdgeFiltration(0, {}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { EdgeFiltration(3, {0.1, 0.2}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { EdgeFiltration(2, {0.0}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { EdgeFiltration(2, {1.5}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { EdgeFiltration(2, {std::nan("")}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::error_code([] { EdgeFiltration(2, {1.0}); }) == std::nullopt);
}

TEST_CASE("snapshot thresholds") {
  const auto ef = sample_filtration(7, 1, 0);
  CHECK(snapshot(ef, 0.0).edge_count() == 0);
  CHECK(snapshot(ef, 1.0).edge_count() == 21);

  const auto tri = testing::from_rows(3, {{{1, 2}, 0.2}, {{1, 3}, 0.5}, {{2, 3}, 0.9}});
  const auto g = snapshot(tri, 0.5);
  const std::vector<std::pair<Vertex, Vertex>> expected{{0, 1}, {0, 2}};
  CHECK(g.edges() == expected);
  CHECK(g.adjacent(2, 0));
  CHECK_FALSE(g.adjacent(1, 2));
  CHECK(testing::error_code([&] { snapshot(tri, 1.5); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("snapshots are monotone in p") {
  const auto ef = sample_filtration(25, 9, 2);
  for (int i = 0; i < 10; ++i) {
    const auto lo = snapshot(ef, 0.1 * i), hi = snapshot(ef, 0.1 * (i + 1));
    for (const auto& [u, v] : lo.edges()) CHECK(hi.adjacent(u, v));
  }
}

TEST_CASE("edge counts at p follow Binomial(C(n,2), p)") {
  const std::uint32_t n = 20;
  const double p = 0.3, m = n * (n - 1) / 2.0;
  const int samples = 1000;
  std::vector<double> counts;
  std::vector<int> bins(20, 0);
  for (int i = 0; i < samples; ++i) {
    const auto ef = sample_filtration(n, 2024, i);
    counts.push_back(static_cast<double>(snapshot(ef, p).edge_count()));
    for (double w : ef.weights()) ++bins[std::min(19, static_cast<int>(w * 20.0))];
  }
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / samples;
  double var = 0.0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= samples - 1;
  const double true_var = m * p * (1 - p);
  CHECK(std::fabs(mean - m * p) <= 4.0 * std::sqrt(true_var / samples));
  // sample variance of ~1000 draws is within 20% of the truth with overwhelming probability
  CHECK(var == doctest::Approx(true_var).epsilon(0.2));

  // pooled weights: chi-square with 19 degrees of freedom, p-value 1e-4 at 47.0
  const double per_bin = m * samples / 20.0;
  double chi2 = 0.0;
  for (int c : bins) chi2 += (c - per_bin) * (c - per_bin) / per_bin;
  CHECK(chi2 < 47.0);
}

TEST_CASE("relabeling moves weights with the vertices") {
  const auto ef = sample_filtration(6, 4, 1);
  const std::vector<Vertex> perm{3, 0, 5, 1, 4, 2};
  const auto r = ef.relabeled(perm);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) CHECK(r.weight(perm[u], perm[v]) == ef.weight(u, v));
  CHECK(testing::error_code([&] { ef.relabeled(std::vector<Vertex>{0, 0, 1, 2, 3, 4}); }) ==
        ErrorCode::InvalidParameter);
}

TEST_CASE("CSV round trip is exact") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(gen() % 12);
    const auto ef = sample_filtration(n, gen(), trial);
    const auto text = edge_filtration_to_csv(ef);
    CHECK(text.rfind("u,v,weight\n", 0) == 0);
    CHECK(edge_filtration_from_csv(text) == ef);
  }
  const auto ef = sample_filtration(9, 1, 1);
  testing::TempDir dir("csv");
  save_edge_filtration(ef, dir.path() / "nested" / "edges.csv");
  CHECK(load_edge_filtration(dir.path() / "nested" / "edges.csv") == ef);
}

TEST_CASE("CSV rows use 1-based vertices") {
  const auto tri = testing::from_rows(3, {{{1, 2}, 0.25}, {{1, 3}, 0.5}, {{2, 3}, 0.75}});
  CHECK(edge_filtration_to_csv(tri) == "u,v,weight\n1,2,0.25\n1,3,0.5\n2,3,0.75\n");
}

TEST_CASE("malformed CSV is reported") {
  CHECK(testing::error_code([] { edge_filtration_from_csv("a,b,c\n1,2,0.5\n"); }) == ErrorCode::Parse);
  CHECK(testing::error_code([] { edge_filtration_from_csv("u,v,weight\n1,2,x\n"); }) == ErrorCode::Parse);
  CHECK(testing::error_code([] { edge_filtration_from_csv("u,v,weight\n1,2\n"); }) == ErrorCode::Parse);
  // pair (1,3) and (2,3) missing
  CHECK(testing::error_code([] { edge_filtration_from_csv("u,v,weight\n1,2,0.5\n2,3,0.5\n2,3,0.5\n"); }).has_value());
  CHECK(testing::error_code([] { edge_filtration_from_csv("u,v,weight\n0,1,0.5\n"); }).has_value());
  CHECK(testing::error_code([] { edge_filtration_from_csv("u,v,weight\n1,2,1.5\n"); }).has_value());
  CHECK(testing::error_code([] { load_edge_filtration("/nonexistent/dir/edges.csv"); }) == ErrorCode::Io);
}

TEST_CASE("number formatting round-trips doubles") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen);
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(testing::error_code([] { parse_double("0.5x"); }) == ErrorCode::Parse);
}
