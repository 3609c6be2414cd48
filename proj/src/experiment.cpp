#include "rcf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "rcf/error.hpp"
#include "rcf/flag_complex.hpp"
#include "rcf/io.hpp"
#include "rcf/special_cycles.hpp"

namespace rcf {

using nlohmann::json;

std::vector<double> geometric_grid(std::uint32_t n, std::uint32_t k, double eps, std::uint32_t points) {
  if (points < 2) invalid_parameter("a geometric grid needs at least 2 points");
  const auto scales = thresholds(n, k, eps);
  const double lo = std::min(scales.birth_scale, 1.0);
  const double hi = std::min(scales.death_scale, 1.0);
  std::vector<double> grid(points);
  for (std::uint32_t i = 0; i < points; ++i)
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  grid.back() = hi;
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<std::pair<double, double>> query_pairs(const ExperimentConfig& cfg) {
  if (!cfg.pairs.empty()) return cfg.pairs;
  const auto grid = geometric_grid(cfg.n, cfg.k, cfg.eps, cfg.grid_points);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j) out.emplace_back(grid[i], grid[j]);
  return out;
}

namespace {

std::vector<double> betti_grid(const ExperimentConfig& cfg) {
  if (cfg.pairs.empty()) return geometric_grid(cfg.n, cfg.k, cfg.eps, cfg.grid_points);
  std::vector<double> ts;
  for (const auto& [p1, p2] : cfg.pairs) {
    ts.push_back(p1);
    ts.push_back(p2);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

}  // namespace

CappedPersistence persistence_with_cap_policy(const EdgeFiltration& ef, std::uint32_t k_max,
                                              const CapPolicy& policy, std::uint32_t characteristic,
                                              double min_cap) {
  double cap = ef.n() >= 2 ? adaptive_cap(ef.n(), std::max(k_max, 1u), policy.initial_eps) : 1.0;
  cap = std::min(1.0, std::max(cap, min_cap));
  std::uint32_t retries = 0;
  while (true) {
    const auto ff = build_flag_filtration(ef, k_max + 1, cap);
    auto dg = compute_persistence(ff, k_max, characteristic);
    bool alive_at_cap = false;
    for (std::uint32_t d = 1; d <= k_max; ++d) alive_at_cap = alive_at_cap || dg.has_pairs_at_cap(d);
    if (!alive_at_cap) return {std::move(dg), cap, retries, true};
    if (cap >= 1.0 || retries >= policy.max_retries) return {std::move(dg), cap, retries, false};
    cap = std::min(1.0, cap * policy.escalation);
    ++retries;
  }
}

Histogram histogram(std::span<const double> values, std::uint32_t bins) {
  if (bins < 1) invalid_parameter("histogram needs at least one bin");
  if (values.empty()) throw Error(ErrorCode::EmptyHistogram, "histogram of an empty value list");
  for (double v : values)
    if (!std::isfinite(v)) invalid_parameter("histogram values must be finite");
  auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it, hi = *max_it;
  if (lo == hi) {
    const double half = 4.0 * bins * DBL_EPSILON * std::max(std::fabs(lo), 1.0);
    lo -= half;
    hi += half;
  }
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / bins;
  for (std::uint32_t i = 0; i < bins; ++i) h.edges[i] = lo + width * i;
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto bin = static_cast<std::ptrdiff_t>(std::upper_bound(h.edges.begin(), h.edges.end(), v) - h.edges.begin()) - 1;
    bin = std::clamp<std::ptrdiff_t>(bin, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

std::string histogram_to_csv(const Histogram& h) {
  std::string out = "bin_lower,bin_upper,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out += format_double(h.edges[i]) + "," + format_double(h.edges[i + 1]) + "," + std::to_string(h.counts[i]) + "\n";
  return out;
}

SampleResult run_sample(const ExperimentConfig& cfg, std::uint64_t sample_index) {
  const auto start = std::chrono::steady_clock::now();
  SampleResult result;
  result.sample_index = sample_index;
  const auto ef = sample_filtration(cfg.n, cfg.master_seed, sample_index);

  switch (cfg.kind) {
    case ExperimentKind::MaxPersistence: {
      const auto capped = persistence_with_cap_policy(ef, cfg.k, cfg.cap, cfg.characteristic);
      result.cap = capped.cap;
      result.retries = capped.retries;
      if (!capped.resolved) {
        result.status = SampleStatus::CapFailed;
        break;
      }
      for (std::uint32_t d = 1; d <= cfg.k; ++d) result.max_persistence.push_back(max_persistence(capped.diagram, d));
      break;
    }
    case ExperimentKind::SpecialCycles: {
      for (const auto& [p1, p2] : query_pairs(cfg))
        result.special_counts.push_back(count_special_cycles(ef, cfg.k, p1, p2).count);
      break;
    }
    case ExperimentKind::RankSweep:
    case ExperimentKind::BettiCurve: {
      // rank and Betti numbers below the cap do not need the classes to die
      double top = 0.0;
      for (const auto& [p1, p2] : query_pairs(cfg)) top = std::max(top, p2);
      const auto ff = build_flag_filtration(ef, cfg.k + 1, std::max(top, DBL_MIN));
      const auto dg = compute_persistence(ff, cfg.k, cfg.characteristic);
      result.cap = ff.w_cap();
      if (cfg.kind == ExperimentKind::RankSweep) {
        for (const auto& [p1, p2] : query_pairs(cfg)) result.ranks.push_back(rank_invariant(dg, {cfg.k, p1, p2}));
      } else {
        for (double t : betti_grid(cfg)) result.betti.push_back(betti_at(dg, cfg.k, t));
      }
      break;
    }
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace {

struct Moments {
  double mean = std::nan("");
  double median = std::nan("");
  double stddev = std::nan("");
  double variance = std::nan("");
};

Moments moments(std::vector<double> values) {
  Moments m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / values.size();
  double squares = 0.0;
  for (double v : values) squares += (v - m.mean) * (v - m.mean);
  m.variance = values.size() > 1 ? squares / (values.size() - 1) : 0.0;
  m.stddev = std::sqrt(m.variance);
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  m.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return m;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json moments_json(const Moments& m) {
  return {{"mean", number_or_null(m.mean)},
          {"median", number_or_null(m.median)},
          {"std", number_or_null(m.stddev)}};
}

json histogram_json(const Histogram& h) { return {{"edges", h.edges}, {"counts", h.counts}}; }

// Config as written into the summary: execution-only fields are dropped so
// that worker count and output location never change the bytes.
json reproducible_config(const ExperimentConfig& cfg) {
  auto doc = json::parse(config_to_json(cfg));
  doc.erase("workers");
  doc.erase("out_dir");
  return doc;
}

void summarize_max_persistence(const ExperimentConfig& cfg, const std::vector<SampleResult>& samples,
                               json& summary, ExperimentOutput& out) {
  std::string rows = "sample_index,n,k,M_k,M_tilde,ratio_f,birth,death\n";
  std::uint64_t cap_failed = 0;
  for (const auto& s : samples) {
    if (s.status == SampleStatus::CapFailed) {
      ++cap_failed;
      continue;
    }
    for (const auto& r : s.max_persistence) {
      rows += std::to_string(s.sample_index) + "," + std::to_string(cfg.n) + "," + std::to_string(r.k) + ",";
      if (r.defined()) {
        rows += format_double(*r.max_ratio) + "," + format_double(r.normalized) + "," +
                format_double(r.ratio_to_scale) + "," + format_double(r.witness.birth) + "," +
                format_double(r.witness.death) + "\n";
      } else {
        rows += "nan,nan,nan,nan,nan\n";
      }
    }
  }
  out.files.emplace_back("samples.csv", std::move(rows));

  json degrees = json::array();
  for (std::uint32_t d = 1; d <= cfg.k; ++d) {
    std::vector<double> normalized, ratio;
    std::uint64_t none = 0;
    for (const auto& s : samples) {
      if (s.status == SampleStatus::CapFailed) continue;
      const auto& r = s.max_persistence[d - 1];
      if (!r.defined()) {
        ++none;
        continue;
      }
      normalized.push_back(r.normalized);
      ratio.push_back(r.ratio_to_scale);
    }
    json entry = {{"k", d},
                  {"reference_M_tilde", 1.0 / (static_cast<double>(d) * (d + 1))},
                  {"defined", normalized.size()},
                  {"none_tally", none},
                  {"cap_failed_tally", cap_failed},
                  {"M_tilde", moments_json(moments(normalized))},
                  {"ratio_f", moments_json(moments(ratio))}};
    if (!normalized.empty()) {
      const auto h_norm = histogram(normalized, cfg.bins);
      const auto h_ratio = histogram(ratio, cfg.bins);
      entry["M_tilde"]["histogram"] = histogram_json(h_norm);
      entry["ratio_f"]["histogram"] = histogram_json(h_ratio);
      if (d == cfg.k) {
        out.files.emplace_back("histogram_M_tilde.csv", histogram_to_csv(h_norm));
        out.files.emplace_back("histogram_ratio_f.csv", histogram_to_csv(h_ratio));
      }
    }
    if (cfg.band_lower || cfg.band_upper) {
      const double lo = cfg.band_lower.value_or(-INFINITY), hi = cfg.band_upper.value_or(INFINITY);
      const auto inside = std::count_if(normalized.begin(), normalized.end(),
                                        [&](double v) { return lo <= v && v <= hi; });
      const double mean = moments(normalized).mean;
      entry["band"] = {{"lower", number_or_null(lo)},
                       {"upper", number_or_null(hi)},
                       {"fraction_in_band", normalized.empty() ? json(nullptr)
                                                               : json(static_cast<double>(inside) / normalized.size())},
                       {"mean_in_band", std::isfinite(mean) && lo <= mean && mean <= hi}};
    }
    degrees.push_back(std::move(entry));
  }
  summary["cap_failed_tally"] = cap_failed;
  summary["degrees"] = std::move(degrees);
}

std::string pair_prefix(const ExperimentConfig& cfg, double p1, double p2) {
  return std::to_string(cfg.n) + "," + std::to_string(cfg.k) + "," + format_double(p1) + "," + format_double(p2);
}

void summarize_special_cycles(const ExperimentConfig& cfg, const std::vector<SampleResult>& samples, json& summary,
                              ExperimentOutput& out) {
  const auto pairs = query_pairs(cfg);
  std::string rows = "n,k,p1,p2,sample_index,N_k\n";
  for (const auto& s : samples)
    for (std::size_t q = 0; q < pairs.size(); ++q)
      rows += pair_prefix(cfg, pairs[q].first, pairs[q].second) + "," + std::to_string(s.sample_index) + "," +
              std::to_string(s.special_counts[q]) + "\n";
  out.files.emplace_back("special_samples.csv", std::move(rows));

  std::string table = "n,k,p1,p2,samples,mean_N,var_N,expected_N\n";
  json entries = json::array();
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    std::vector<double> counts;
    for (const auto& s : samples) counts.push_back(static_cast<double>(s.special_counts[q]));
    const auto m = moments(counts);
    const double expected = expected_special_cycles(cfg.n, cfg.k, pairs[q].first, pairs[q].second);
    table += pair_prefix(cfg, pairs[q].first, pairs[q].second) + "," + std::to_string(samples.size()) + "," +
             format_double(m.mean) + "," + format_double(m.variance) + "," + format_double(expected) + "\n";
    const double standard_error = m.stddev / std::sqrt(static_cast<double>(samples.size()));
    entries.push_back({{"p1", pairs[q].first},
                       {"p2", pairs[q].second},
                       {"mean_N", m.mean},
                       {"var_N", m.variance},
                       {"expected_N", expected},
                       {"standard_error", standard_error},
                       {"within_3_se", std::fabs(m.mean - expected) <= 3.0 * standard_error}});
  }
  out.files.emplace_back("special_summary.csv", std::move(table));
  summary["pairs"] = std::move(entries);
}

void summarize_rank_sweep(const ExperimentConfig& cfg, const std::vector<SampleResult>& samples, json& summary,
                          ExperimentOutput& out) {
  const auto pairs = query_pairs(cfg);
  std::string rows = "sample_index,n,k,p1,p2,rank\n";
  for (const auto& s : samples)
    for (std::size_t q = 0; q < pairs.size(); ++q)
      rows += std::to_string(s.sample_index) + "," + pair_prefix(cfg, pairs[q].first, pairs[q].second) + "," +
              std::to_string(s.ranks[q]) + "\n";
  out.files.emplace_back("rank_samples.csv", std::move(rows));

  std::string table = "n,k,p1,p2,samples,mean_rank,expected_betti_p1\n";
  json entries = json::array();
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    std::vector<double> ranks;
    for (const auto& s : samples) ranks.push_back(static_cast<double>(s.ranks[q]));
    const auto m = moments(ranks);
    const double p1 = pairs[q].first;
    const double baseline = (cfg.n >= cfg.k + 2 && p1 < 1.0) ? expected_betti(cfg.n, cfg.k, p1) : std::nan("");
    table += pair_prefix(cfg, p1, pairs[q].second) + "," + std::to_string(samples.size()) + "," +
             format_double(m.mean) + "," + format_double(baseline) + "\n";
    entries.push_back({{"p1", p1},
                       {"p2", pairs[q].second},
                       {"mean_rank", m.mean},
                       {"expected_betti_p1", number_or_null(baseline)}});
  }
  out.files.emplace_back("rank_summary.csv", std::move(table));
  summary["pairs"] = std::move(entries);
}

void summarize_betti_curve(const ExperimentConfig& cfg, const std::vector<SampleResult>& samples, json& summary,
                           ExperimentOutput& out) {
  const auto grid = betti_grid(cfg);
  std::string rows = "sample_index,n,k,t,betti\n";
  for (const auto& s : samples)
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows += std::to_string(s.sample_index) + "," + std::to_string(cfg.n) + "," + std::to_string(cfg.k) + "," +
              format_double(grid[i]) + "," + std::to_string(s.betti[i]) + "\n";
  out.files.emplace_back("betti_samples.csv", std::move(rows));

  std::string table = "n,k,t,samples,mean_betti,expected_betti\n";
  json entries = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> values;
    for (const auto& s : samples) values.push_back(static_cast<double>(s.betti[i]));
    const auto m = moments(values);
    const double baseline =
        (cfg.n >= cfg.k + 2 && grid[i] < 1.0) ? expected_betti(cfg.n, cfg.k, grid[i]) : std::nan("");
    table += std::to_string(cfg.n) + "," + std::to_string(cfg.k) + "," + format_double(grid[i]) + "," +
             std::to_string(samples.size()) + "," + format_double(m.mean) + "," + format_double(baseline) + "\n";
    entries.push_back({{"t", grid[i]}, {"mean_betti", m.mean}, {"expected_betti", number_or_null(baseline)}});
  }
  out.files.emplace_back("betti_summary.csv", std::move(table));
  summary["grid"] = std::move(entries);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentOutput out;
  out.samples.resize(cfg.samples);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= cfg.samples) return;
      try {
        out.samples[i] = run_sample(cfg, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.samples);
        return;
      }
    }
  };
  const std::uint32_t threads = static_cast<std::uint32_t>(std::min<std::uint64_t>(cfg.workers, cfg.samples));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  json summary = {{"kind", to_string(cfg.kind)}, {"config", reproducible_config(cfg)}, {"samples", cfg.samples}};
  switch (cfg.kind) {
    case ExperimentKind::MaxPersistence: summarize_max_persistence(cfg, out.samples, summary, out); break;
    case ExperimentKind::SpecialCycles: summarize_special_cycles(cfg, out.samples, summary, out); break;
    case ExperimentKind::RankSweep: summarize_rank_sweep(cfg, out.samples, summary, out); break;
    case ExperimentKind::BettiCurve: summarize_betti_curve(cfg, out.samples, summary, out); break;
  }
  out.summary_json = summary.dump(2) + "\n";
  out.files.emplace_back("summary.json", out.summary_json);

  if (!cfg.out_dir.empty())
    for (const auto& [name, contents] : out.files) write_text_file(std::filesystem::path(cfg.out_dir) / name, contents);
  return out;
}

}  // namespace rcf
