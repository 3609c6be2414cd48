#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rcf/flag_complex.hpp"

namespace rcf {

enum class DeathKind {
  Finite,
  // Never dies: the filtration reached the full simplex.
  Essential,
  // Still alive at the weight cap; the true death lies above it.
  EssentialAtCap,
};

struct PersistencePair {
  std::uint32_t dim = 0;
  double birth = 0.0;
  // +inf unless kind == Finite.
  double death = std::numeric_limits<double>::infinity();
  DeathKind kind = DeathKind::Finite;

  bool finite() const { return kind == DeathKind::Finite; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

// Sort key for rows: (dim, birth, death, kind).
bool pair_less(const PersistencePair& a, const PersistencePair& b);

class PersistenceDiagram {
 public:
  PersistenceDiagram(std::uint32_t n, std::uint32_t k_max, double w_cap, std::uint32_t characteristic,
                     std::vector<std::vector<PersistencePair>> pairs_by_degree);

  std::uint32_t n() const { return n_; }
  std::uint32_t k_max() const { return k_max_; }
  double w_cap() const { return w_cap_; }
  std::uint32_t characteristic() const { return characteristic_; }

  // Pairs of degree k sorted by pair_less.
  std::span<const PersistencePair> pairs(std::uint32_t k) const;

  bool has_pairs_at_cap(std::uint32_t k) const;

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t k_max_;
  double w_cap_;
  std::uint32_t characteristic_;
  std::vector<std::vector<PersistencePair>> pairs_;
};

// Persistence of `ff` in degrees 0..k_max over the prime field of the given
// characteristic. Requires ff.max_dim() >= k_max + 1. Zero-persistence pairs
// are dropped.
PersistenceDiagram compute_persistence(const FlagFiltration& ff, std::uint32_t k_max,
                                       std::uint32_t characteristic = 2);

// Textbook left-to-right reduction of the full boundary matrix. Slow; used to
// check compute_persistence.
PersistenceDiagram naive_reduction_oracle(const FlagFiltration& ff, std::uint32_t k_max,
                                          std::uint32_t characteristic = 2);

// #{pairs of degree k with birth <= t < death}; only defined up to the cap.
std::size_t betti_at(const PersistenceDiagram& dg, std::uint32_t k, double t);

// CSV `dim,birth,death`; Essential prints `inf`, EssentialAtCap prints `cap`.
std::string diagram_to_csv(const PersistenceDiagram& dg);
void save_diagram(const PersistenceDiagram& dg, const std::filesystem::path& path);

bool is_prime(std::uint32_t value);

}  // namespace rcf
