#include "rcf/flag_complex.hpp"

#include <algorithm>
#include <cmath>

#include "rcf/error.hpp"
#include "rcf/io.hpp"

namespace rcf {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) invalid_parameter("simplex needs at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i - 1] >= vertices_[i]) invalid_parameter("simplex vertices must be strictly increasing");
}

FlagFiltration::FlagFiltration(EdgeFiltration edges, std::uint32_t max_dim, double w_cap,
                               std::vector<FilteredSimplex> simplices)
    : edges_(std::move(edges)),
      max_dim_(max_dim),
      w_cap_(w_cap),
      binom_(edges_.n(), max_dim + 2),
      simplices_(std::move(simplices)),
      adjacency_(edges_.n()) {
  const std::uint32_t n = edges_.n();
  std::size_t edge_count = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (edges_.weight(u, v) <= w_cap_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        ++edge_count;
      }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  complete_ = edge_count == edges_.edge_count();
}

std::size_t FlagFiltration::count(std::uint32_t dim) const {
  return static_cast<std::size_t>(std::count_if(
      simplices_.begin(), simplices_.end(), [dim](const FilteredSimplex& s) { return s.dim == dim; }));
}

std::vector<Vertex> FlagFiltration::vertices(const FilteredSimplex& s) const {
  return simplex_unrank(s.index, s.dim + 1, n(), binom_);
}

namespace {

struct CliqueExpander {
  const EdgeFiltration& ef;
  const std::vector<std::vector<Vertex>>& higher;  // neighbors above v at the cap
  const BinomialTable& binom;
  std::uint32_t max_dim;
  std::vector<FilteredSimplex>& out;
  std::vector<Vertex> clique;

  // `candidates` are the common higher neighbors of the current clique.
  void expand(const std::vector<Vertex>& candidates, double value) {
    out.push_back({value, static_cast<std::uint32_t>(clique.size() - 1), simplex_rank(clique, binom)});
    if (clique.size() == max_dim + 1) return;
    std::vector<Vertex> next;
    for (Vertex w : candidates) {
      double w_value = value;
      for (Vertex v : clique) w_value = std::max(w_value, ef.weight(v, w));
      next.clear();
      const auto& above = higher[w];
      std::set_intersection(candidates.begin(), candidates.end(), above.begin(), above.end(),
                            std::back_inserter(next));
      clique.push_back(w);
      expand(next, w_value);
      clique.pop_back();
    }
  }
};

}  // namespace

FlagFiltration build_flag_filtration(const EdgeFiltration& ef, std::uint32_t max_dim, double w_cap) {
  if (!(w_cap > 0.0 && w_cap <= 1.0)) invalid_parameter("weight cap outside (0, 1]");
  const std::uint32_t n = ef.n();
  if (n == 0) invalid_parameter("empty edge filtration");

  std::vector<std::vector<Vertex>> higher(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (ef.weight(u, v) <= w_cap) higher[u].push_back(v);

  BinomialTable binom(n, max_dim + 2);
  std::vector<FilteredSimplex> simplices;
  CliqueExpander expander{ef, higher, binom, max_dim, simplices, {}};
  for (Vertex v = 0; v < n; ++v) {
    expander.clique.assign(1, v);
    expander.expand(higher[v], 0.0);
  }
  std::sort(simplices.begin(), simplices.end(), canonical_less);
  return FlagFiltration(ef, max_dim, w_cap, std::move(simplices));
}

double simplex_value(const EdgeFiltration& ef, const Simplex& s) {
  const auto vs = s.vertices();
  for (Vertex v : vs)
    if (v >= ef.n()) invalid_parameter("simplex vertex out of range");
  double value = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) value = std::max(value, ef.weight(vs[i], vs[j]));
  return value;
}

double adaptive_cap(std::uint32_t n, std::uint32_t k, double eps) {
  if (n < 2) invalid_parameter("adaptive_cap needs n >= 2");
  if (k < 1) invalid_parameter("adaptive_cap needs k >= 1");
  if (!(eps > 0.0)) invalid_parameter("adaptive_cap needs eps > 0");
  const double base = (k / 2.0 + 1.0 + eps) * std::log(static_cast<double>(n)) / n;
  return std::min(1.0, std::pow(base, 1.0 / (k + 1)));
}

std::string flag_filtration_to_text(const FlagFiltration& ff) {
  std::string out;
  for (const auto& s : ff.simplices()) {
    out += format_double(s.value);
    for (Vertex v : ff.vertices(s)) {
      out += ' ';
      out += std::to_string(v + 1);
    }
    out += '\n';
  }
  return out;
}

void save_flag_filtration(const FlagFiltration& ff, const std::filesystem::path& path) {
  write_text_file(path, flag_filtration_to_text(ff));
}

}  // namespace rcf
