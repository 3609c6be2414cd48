#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcf/filtration_model.hpp"
#include "rcf/persistence.hpp"

namespace rcf {

// A (2k+2)-vertex set whose sorted halves U (smallest k+1) and V (largest
// k+1), paired antipodally as (u_i, v_i), span a cross-polytope k-sphere at
// p1 that is still not a boundary at p2:
//   (1) every pair in Y except (u_i, v_i) has weight <= p1,
//   (2) every (u_i, v_i) has weight > p2,
//   (3) no vertex outside Y is joined to all of U at p2.
struct SpecialCycleWitness {
  std::vector<Vertex> u;
  std::vector<Vertex> v;
  double p1 = 0.0;
  double p2 = 0.0;

  std::vector<Vertex> vertex_set() const;

  friend bool operator==(const SpecialCycleWitness&, const SpecialCycleWitness&) = default;
};

struct SpecialCycleCount {
  std::uint32_t k = 1;
  double p1 = 0.0;
  double p2 = 0.0;
  std::uint64_t count = 0;
  // Filled only when requested; ordered lexicographically by (U, V).
  std::vector<SpecialCycleWitness> witnesses;
};

// Exact count by clique expansion over U candidates with early pruning.
SpecialCycleCount count_special_cycles(const EdgeFiltration& ef, std::uint32_t k, double p1, double p2,
                                       bool collect_witnesses = false);

// Checks all C(n, 2k+2) subsets; limited to n <= 30.
SpecialCycleCount count_special_cycles_brute_force(const EdgeFiltration& ef, std::uint32_t k, double p1,
                                                   double p2, bool collect_witnesses = false);

// Re-checks conditions (1)-(3) edge by edge, and additionally that U has no
// common neighbor at p2 anywhere in the graph. Returns a description of the
// first failed condition, or nothing when the witness is sound.
std::optional<std::string> check_witness(const EdgeFiltration& ef, const SpecialCycleWitness& w);

// E(N_k) = C(n, 2k+2) p1^(2k(k+1)) (1-p2)^(k+1) (1-p2^(k+1))^(n-2k-2),
// evaluated in log space. Zero when n < 2k+2.
double expected_special_cycles(std::uint32_t n, std::uint32_t k, double p1, double p2);

struct WitnessReport {
  std::uint64_t special_cycles = 0;
  std::size_t rank = 0;
  // M_k from the diagram; empty when the degree-k diagram has no finite pair.
  std::optional<double> max_ratio;
  bool passed = true;
  std::optional<SpecialCycleWitness> violation;
  std::string message;
};

// Verifies that a (p1, p2) special persistent cycle forces a class of degree k
// alive from p1 through p2 in `dg`: N_k > 0 implies rank >= 1 and M_k >= p2/p1.
WitnessReport witness_implies_persistence(const EdgeFiltration& ef, std::uint32_t k, double p1, double p2,
                                          const PersistenceDiagram& dg);

}  // namespace rcf
