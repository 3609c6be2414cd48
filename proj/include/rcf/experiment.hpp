#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rcf/filtration_model.hpp"
#include "rcf/persistence.hpp"
#include "rcf/stats.hpp"

namespace rcf {

enum class ExperimentKind { MaxPersistence, SpecialCycles, RankSweep, BettiCurve };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

// Weight-cap escalation: start at adaptive_cap(n, k_max, initial_eps) and
// multiply by `escalation` (clamped to 1) while a class of degree 1..k_max is
// alive at the cap.
struct CapPolicy {
  double initial_eps = 0.5;
  double escalation = 1.5;
  std::uint32_t max_retries = 16;

  friend bool operator==(const CapPolicy&, const CapPolicy&) = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MaxPersistence;
  std::uint32_t n = 100;
  std::uint32_t k = 1;
  std::uint64_t samples = 100;
  std::uint64_t master_seed = 1;
  // eps of thresholds() when deriving the default (p1, p2) grid
  double eps = 0.5;
  // explicit (p1, p2) pairs; empty means the geometric default grid
  std::vector<std::pair<double, double>> pairs;
  std::uint32_t grid_points = 8;
  std::uint32_t bins = 30;
  std::uint32_t characteristic = 2;
  CapPolicy cap;
  std::string out_dir;
  std::uint32_t workers = 1;
  // optional reporting band for M_tilde
  std::optional<double> band_lower;
  std::optional<double> band_upper;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

void validate(const ExperimentConfig& cfg);
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);
// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text);

// n^(-1/k) .. min(1, death scale), `points` geometric steps.
std::vector<double> geometric_grid(std::uint32_t n, std::uint32_t k, double eps, std::uint32_t points);
// All (g_i, g_j), i <= j, of the geometric grid, unless cfg.pairs is set.
std::vector<std::pair<double, double>> query_pairs(const ExperimentConfig& cfg);

struct CappedPersistence {
  PersistenceDiagram diagram;
  double cap = 1.0;
  std::uint32_t retries = 0;
  // false when classes of degree 1..k_max were still alive at the last cap
  bool resolved = true;
};

CappedPersistence persistence_with_cap_policy(const EdgeFiltration& ef, std::uint32_t k_max,
                                              const CapPolicy& policy, std::uint32_t characteristic = 2,
                                              double min_cap = 0.0);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
};

// Equal-width bins over [min, max]; right-open except the last bin. A single
// distinct value v gets the range v -/+ 4 * bins * DBL_EPSILON * max(|v|, 1).
Histogram histogram(std::span<const double> values, std::uint32_t bins);
std::string histogram_to_csv(const Histogram& h);

enum class SampleStatus { Ok, CapFailed };

struct SampleResult {
  std::uint64_t sample_index = 0;
  SampleStatus status = SampleStatus::Ok;
  // degrees 1..k (max-persistence runs)
  std::vector<MaxPersistenceResult> max_persistence;
  // one entry per query pair (special-cycles runs)
  std::vector<std::uint64_t> special_counts;
  // one entry per query pair (rank-sweep runs)
  std::vector<std::size_t> ranks;
  // one entry per grid point (betti-curve runs)
  std::vector<std::size_t> betti;
  double cap = 1.0;
  std::uint32_t retries = 0;
  // excluded from every output file
  double wall_seconds = 0.0;
};

struct ExperimentOutput {
  std::vector<SampleResult> samples;
  std::string summary_json;
  // file name -> contents, all written under cfg.out_dir when it is set
  std::vector<std::pair<std::string, std::string>> files;
};

SampleResult run_sample(const ExperimentConfig& cfg, std::uint64_t sample_index);

// Runs every sample on cfg.workers threads. Outputs depend only on the config
// minus (workers, out_dir).
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

}  // namespace rcf
