#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rcf/combinatorics.hpp"
#include "rcf/filtration_model.hpp"

namespace rcf {

// A face of the simplex on [n]: strictly increasing 0-based vertex tuple.
class Simplex {
 public:
  explicit Simplex(std::vector<Vertex> vertices);

  std::span<const Vertex> vertices() const { return vertices_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(vertices_.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  std::vector<Vertex> vertices_;
};

// A clique together with its filtration value. The vertex tuple is stored as
// its combinatorial index for the simplex's dimension.
struct FilteredSimplex {
  double value = 0.0;
  std::uint32_t dim = 0;
  SimplexIndex index = 0;

  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

// Canonical simplexwise order: (value, dim, index) ascending.
inline bool canonical_less(const FilteredSimplex& a, const FilteredSimplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.index < b.index;
}

class FlagFiltration {
 public:
  FlagFiltration(EdgeFiltration edges, std::uint32_t max_dim, double w_cap,
                 std::vector<FilteredSimplex> simplices);

  std::uint32_t n() const { return edges_.n(); }
  std::uint32_t max_dim() const { return max_dim_; }
  double w_cap() const { return w_cap_; }

  // Every clique of dimension <= max_dim and value <= w_cap, canonical order.
  std::span<const FilteredSimplex> simplices() const { return simplices_; }
  std::size_t count(std::uint32_t dim) const;

  const EdgeFiltration& edge_filtration() const { return edges_; }
  const BinomialTable& binomials() const { return binom_; }

  // Neighbors of v through edges of weight <= w_cap, ascending.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return u != v && edges_.weight(u, v) <= w_cap_; }

  // True when every edge of K_n is below the cap, so the filtration reaches
  // the full (dimension-truncated) simplex.
  bool complete() const { return complete_; }

  std::vector<Vertex> vertices(const FilteredSimplex& s) const;

 private:
  EdgeFiltration edges_;
  std::uint32_t max_dim_;
  double w_cap_;
  BinomialTable binom_;
  std::vector<FilteredSimplex> simplices_;
  std::vector<std::vector<Vertex>> adjacency_;
  bool complete_ = false;
};

FlagFiltration build_flag_filtration(const EdgeFiltration& ef, std::uint32_t max_dim, double w_cap);

// 0 for a vertex, otherwise the largest edge weight inside `s`.
double simplex_value(const EdgeFiltration& ef, const Simplex& s);

// min(1, ((k/2 + 1 + eps) log n / n)^(1/(k+1))): the level above which
// degree-k rational homology vanishes with high probability.
double adaptive_cap(std::uint32_t n, std::uint32_t k, double eps);

// One simplex per line, `value v0 v1 ... vd`, 1-based vertices, canonical order.
std::string flag_filtration_to_text(const FlagFiltration& ff);
void save_flag_filtration(const FlagFiltration& ff, const std::filesystem::path& path);

}  // namespace rcf
