#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcf/combinatorics.hpp"

namespace rcf {

// Edge appearance times of the complete graph K_n. Vertices are 0-based in
// memory and 1-based in every file format.
class EdgeFiltration {
 public:
  EdgeFiltration() = default;

  // `weights` lists the pairs (u, v), u < v, in lexicographic order; each
  // value must lie in (0, 1].
  EdgeFiltration(std::uint32_t n, std::vector<double> weights);

  std::uint32_t n() const { return n_; }
  std::size_t edge_count() const { return weights_.size(); }

  double weight(Vertex u, Vertex v) const { return weights_[pair_offset(u, v)]; }

  // Lexicographic (u < v) weight list.
  std::span<const double> weights() const { return weights_; }

  // Copy with weight(relabel[u], relabel[v]) = weight(u, v).
  EdgeFiltration relabeled(std::span<const Vertex> relabel) const;

  // Copy with every weight multiplied by `factor` in (0, 1].
  EdgeFiltration scaled(double factor) const;

  std::size_t pair_offset(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    // pairs before row u: u*n - u(u+1)/2
    return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
  }

  friend bool operator==(const EdgeFiltration&, const EdgeFiltration&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<double> weights_;
};

// Builds a filtration from explicit 0-based (u, v, weight) triples; every
// pair must be given exactly once.
EdgeFiltration edge_filtration_from_triples(
    std::uint32_t n, std::span<const std::pair<std::pair<Vertex, Vertex>, double>> triples);

// i.i.d. uniform (0, 1] weights drawn from the stream of (master_seed, sample_index).
EdgeFiltration sample_filtration(std::uint32_t n, std::uint64_t master_seed,
                                 std::uint64_t sample_index);

// The graph {e : weight(e) <= p}.
class GraphSnapshot {
 public:
  GraphSnapshot(std::uint32_t n, double p, std::vector<std::vector<Vertex>> adjacency)
      : n_(n), p_(p), adjacency_(std::move(adjacency)) {}

  std::uint32_t n() const { return n_; }
  double threshold() const { return p_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  std::uint32_t n_;
  double p_;
  std::vector<std::vector<Vertex>> adjacency_;  // sorted ascending
};

GraphSnapshot snapshot(const EdgeFiltration& ef, double p);

// CSV with header `u,v,weight`, 1-based vertices, rows sorted by (u, v),
// weights with 17 significant digits.
std::string edge_filtration_to_csv(const EdgeFiltration& ef);
EdgeFiltration edge_filtration_from_csv(const std::string& text);
void save_edge_filtration(const EdgeFiltration& ef, const std::filesystem::path& path);
EdgeFiltration load_edge_filtration(const std::filesystem::path& path);

}  // namespace rcf
