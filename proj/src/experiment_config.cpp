#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "rcf/error.hpp"
#include "rcf/experiment.hpp"

namespace rcf {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::MaxPersistence: return "max-persistence";
    case ExperimentKind::SpecialCycles: return "special-cycles";
    case ExperimentKind::RankSweep: return "rank-sweep";
    case ExperimentKind::BettiCurve: return "betti-curve";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto kind : {ExperimentKind::MaxPersistence, ExperimentKind::SpecialCycles, ExperimentKind::RankSweep,
                    ExperimentKind::BettiCurve})
    if (name == to_string(kind)) return kind;
  invalid_parameter("unknown experiment kind '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) invalid_parameter("n must be >= 1");
  if (cfg.k < 1) invalid_parameter("k must be >= 1");
  if (cfg.samples < 1) invalid_parameter("samples must be >= 1");
  if (!(cfg.eps > 0.0)) invalid_parameter("eps must be > 0");
  if (cfg.grid_points < 2) invalid_parameter("grid_points must be >= 2");
  if (cfg.bins < 1) invalid_parameter("bins must be >= 1");
  if (!is_prime(cfg.characteristic)) invalid_parameter("characteristic must be prime");
  if (!(cfg.cap.initial_eps > 0.0)) invalid_parameter("cap_policy.initial_eps must be > 0");
  if (!(cfg.cap.escalation > 1.0)) invalid_parameter("cap_policy.escalation must be > 1");
  if (cfg.workers < 1) invalid_parameter("workers must be >= 1");
  for (const auto& [p1, p2] : cfg.pairs)
    if (!(p1 > 0.0 && p1 <= p2 && p2 <= 1.0)) invalid_parameter("each pair needs 0 < p1 <= p2 <= 1");
  if (cfg.kind != ExperimentKind::MaxPersistence && cfg.n < 2 && cfg.pairs.empty())
    invalid_parameter("the default threshold grid needs n >= 2");
  if (cfg.band_lower && cfg.band_upper && *cfg.band_lower > *cfg.band_upper)
    invalid_parameter("band_lower exceeds band_upper");
}

std::string config_to_json(const ExperimentConfig& cfg, int indent) {
  json pairs = json::array();
  for (const auto& [p1, p2] : cfg.pairs) pairs.push_back({p1, p2});
  json doc = {
      {"kind", to_string(cfg.kind)},
      {"n", cfg.n},
      {"k", cfg.k},
      {"samples", cfg.samples},
      {"master_seed", cfg.master_seed},
      {"eps", cfg.eps},
      {"pairs", pairs},
      {"grid_points", cfg.grid_points},
      {"bins", cfg.bins},
      {"characteristic", cfg.characteristic},
      {"cap_policy",
       {{"initial_eps", cfg.cap.initial_eps},
        {"escalation", cfg.cap.escalation},
        {"max_retries", cfg.cap.max_retries}}},
      {"out_dir", cfg.out_dir},
      {"workers", cfg.workers},
      {"band_lower", cfg.band_lower ? json(*cfg.band_lower) : json(nullptr)},
      {"band_upper", cfg.band_upper ? json(*cfg.band_upper) : json(nullptr)},
  };
  return doc.dump(indent);
}

namespace {

template <class T>
void read_field(const json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config field '") + key + "': " + e.what());
  }
}

void read_optional(const json& doc, const char* key, std::optional<double>& out) {
  if (!doc.contains(key)) return;
  if (doc.at(key).is_null()) {
    out.reset();
    return;
  }
  double value = 0.0;
  read_field(doc, key, value);
  out = value;
}

}  // namespace

ExperimentConfig config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  static const char* const known[] = {"kind", "n", "k", "samples", "master_seed", "eps", "pairs", "grid_points",
                                      "bins", "characteristic", "cap_policy", "out_dir", "workers",
                                      "band_lower", "band_upper"};
  for (const auto& [key, value] : doc.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw Error(ErrorCode::Parse, "unknown config field '" + key + "'");

  ExperimentConfig cfg;
  if (doc.contains("kind")) {
    std::string kind;
    read_field(doc, "kind", kind);
    cfg.kind = experiment_kind_from_string(kind);
  }
  read_field(doc, "n", cfg.n);
  read_field(doc, "k", cfg.k);
  read_field(doc, "samples", cfg.samples);
  read_field(doc, "master_seed", cfg.master_seed);
  read_field(doc, "eps", cfg.eps);
  read_field(doc, "pairs", cfg.pairs);
  read_field(doc, "grid_points", cfg.grid_points);
  read_field(doc, "bins", cfg.bins);
  read_field(doc, "characteristic", cfg.characteristic);
  if (doc.contains("cap_policy")) {
    const auto& cap = doc.at("cap_policy");
    if (!cap.is_object()) throw Error(ErrorCode::Parse, "cap_policy must be an object");
    read_field(cap, "initial_eps", cfg.cap.initial_eps);
    read_field(cap, "escalation", cfg.cap.escalation);
    read_field(cap, "max_retries", cfg.cap.max_retries);
  }
  read_field(doc, "out_dir", cfg.out_dir);
  read_field(doc, "workers", cfg.workers);
  read_optional(doc, "band_lower", cfg.band_lower);
  read_optional(doc, "band_upper", cfg.band_upper);
  validate(cfg);
  return cfg;
}

}  // namespace rcf
