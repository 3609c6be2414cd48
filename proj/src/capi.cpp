#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "rcf/error.hpp"
#include "rcf/experiment.hpp"
#include "rcf/filtration_model.hpp"
#include "rcf/flag_complex.hpp"
#include "rcf/persistence.hpp"
#include "rcf/rcf.h"
#include "rcf/special_cycles.hpp"
#include "rcf/stats.hpp"

struct rcf_filtration {
  rcf::EdgeFiltration value;
};

struct rcf_diagram {
  rcf::PersistenceDiagram value;
};

namespace {

thread_local std::string last_error;

rcf_status status_of(rcf::ErrorCode code) {
  switch (code) {
    case rcf::ErrorCode::InvalidParameter: return RCF_ERR_INVALID_PARAMETER;
    case rcf::ErrorCode::CapInsufficient: return RCF_ERR_CAP_INSUFFICIENT;
    case rcf::ErrorCode::EmptyHistogram: return RCF_ERR_EMPTY_HISTOGRAM;
    case rcf::ErrorCode::Io: return RCF_ERR_IO;
    case rcf::ErrorCode::Parse: return RCF_ERR_PARSE;
  }
  return RCF_ERR_INTERNAL;
}

template <class Fn>
rcf_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return RCF_OK;
  } catch (const rcf::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return RCF_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) rcf::invalid_parameter(std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rcf::Vertex to_vertex(uint32_t v, uint32_t n) {
  if (v < 1 || v > n) rcf::invalid_parameter("vertex " + std::to_string(v) + " outside [1, n]");
  return v - 1;
}

}  // namespace

extern "C" {

const char* rcf_version(void) { return "1.0.0"; }

const char* rcf_last_error(void) { return last_error.c_str(); }

const char* rcf_status_name(rcf_status status) {
  switch (status) {
    case RCF_OK: return "ok";
    case RCF_ERR_INVALID_PARAMETER: return "invalid-parameter";
    case RCF_ERR_CAP_INSUFFICIENT: return "cap-insufficient";
    case RCF_ERR_EMPTY_HISTOGRAM: return "empty-histogram";
    case RCF_ERR_IO: return "io";
    case RCF_ERR_PARSE: return "parse";
    case RCF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void rcf_string_free(char* text) { std::free(text); }

rcf_status rcf_filtration_sample(uint32_t n, uint64_t master_seed, uint64_t sample_index, rcf_filtration** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rcf_filtration{rcf::sample_filtration(n, master_seed, sample_index)};
  });
}

rcf_status rcf_filtration_from_weights(uint32_t n, const double* weights, size_t count, rcf_filtration** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(weights, "weights");
    *out = new rcf_filtration{rcf::EdgeFiltration(n, std::vector<double>(weights, weights + count))};
  });
}

rcf_status rcf_filtration_load_csv(const char* path, rcf_filtration** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rcf_filtration{rcf::load_edge_filtration(path)};
  });
}

rcf_status rcf_filtration_save_csv(const rcf_filtration* f, const char* path) {
  return guarded([&] {
    require(f, "filtration");
    require(path, "path");
    rcf::save_edge_filtration(f->value, path);
  });
}

uint32_t rcf_filtration_n(const rcf_filtration* f) { return f ? f->value.n() : 0; }

rcf_status rcf_filtration_weight(const rcf_filtration* f, uint32_t u, uint32_t v, double* out) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    const auto a = to_vertex(u, f->value.n()), b = to_vertex(v, f->value.n());
    if (a == b) rcf::invalid_parameter("no self-loop weight exists");
    *out = f->value.weight(a, b);
  });
}

void rcf_filtration_free(rcf_filtration* f) { delete f; }

rcf_status rcf_export_flag_filtration(const rcf_filtration* f, uint32_t max_dim, double w_cap, const char* path) {
  return guarded([&] {
    require(f, "filtration");
    require(path, "path");
    rcf::save_flag_filtration(rcf::build_flag_filtration(f->value, max_dim, w_cap), path);
  });
}

rcf_status rcf_compute_persistence(const rcf_filtration* f, uint32_t k_max, double w_cap, uint32_t characteristic,
                                   rcf_diagram** out) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    const auto ff = rcf::build_flag_filtration(f->value, k_max + 1, w_cap);
    *out = new rcf_diagram{rcf::compute_persistence(ff, k_max, characteristic)};
  });
}

rcf_status rcf_compute_persistence_auto(const rcf_filtration* f, uint32_t k_max, uint32_t characteristic,
                                        double initial_eps, double escalation, uint32_t max_retries,
                                        rcf_diagram** out, double* cap_used, uint32_t* retries) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    if (!(initial_eps > 0.0)) rcf::invalid_parameter("initial_eps must be > 0");
    if (!(escalation > 1.0)) rcf::invalid_parameter("escalation must be > 1");
    auto capped = rcf::persistence_with_cap_policy(f->value, k_max, {initial_eps, escalation, max_retries},
                                                   characteristic);
    if (cap_used) *cap_used = capped.cap;
    if (retries) *retries = capped.retries;
    if (!capped.resolved)
      throw rcf::Error(rcf::ErrorCode::CapInsufficient, "classes still alive after " +
                                                            std::to_string(capped.retries) + " cap escalations");
    *out = new rcf_diagram{std::move(capped.diagram)};
  });
}

rcf_status rcf_compute_persistence_naive(const rcf_filtration* f, uint32_t k_max, double w_cap,
                                         uint32_t characteristic, rcf_diagram** out) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    const auto ff = rcf::build_flag_filtration(f->value, k_max + 1, w_cap);
    *out = new rcf_diagram{rcf::naive_reduction_oracle(ff, k_max, characteristic)};
  });
}

uint32_t rcf_diagram_k_max(const rcf_diagram* d) { return d ? d->value.k_max() : 0; }

double rcf_diagram_cap(const rcf_diagram* d) { return d ? d->value.w_cap() : 0.0; }

size_t rcf_diagram_pair_count(const rcf_diagram* d, uint32_t k) {
  if (!d || k > d->value.k_max()) return 0;
  return d->value.pairs(k).size();
}

rcf_status rcf_diagram_pair(const rcf_diagram* d, uint32_t k, size_t i, double* birth, double* death,
                            rcf_death_kind* kind) {
  return guarded([&] {
    require(d, "diagram");
    const auto pairs = d->value.pairs(k);
    if (i >= pairs.size()) rcf::invalid_parameter("pair index out of range");
    const auto& p = pairs[i];
    if (birth) *birth = p.birth;
    if (death) *death = p.death;
    if (kind)
      *kind = p.kind == rcf::DeathKind::Finite      ? RCF_DEATH_FINITE
              : p.kind == rcf::DeathKind::Essential ? RCF_DEATH_ESSENTIAL
                                                    : RCF_DEATH_AT_CAP;
  });
}

rcf_status rcf_diagram_save_csv(const rcf_diagram* d, const char* path) {
  return guarded([&] {
    require(d, "diagram");
    require(path, "path");
    rcf::save_diagram(d->value, path);
  });
}

void rcf_diagram_free(rcf_diagram* d) { delete d; }

rcf_status rcf_betti_at(const rcf_diagram* d, uint32_t k, double t, uint64_t* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = rcf::betti_at(d->value, k, t);
  });
}

rcf_status rcf_rank_invariant(const rcf_diagram* d, uint32_t k, double p1, double p2, uint64_t* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = rcf::rank_invariant(d->value, {k, p1, p2});
  });
}

rcf_status rcf_max_persistence(const rcf_diagram* d, uint32_t k, rcf_max_persistence_result* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    const auto r = rcf::max_persistence(d->value, k);
    *out = {};
    out->defined = r.defined() ? 1 : 0;
    if (r.defined()) {
      out->max_ratio = *r.max_ratio;
      out->normalized = r.normalized;
      out->ratio_to_scale = r.ratio_to_scale;
      out->birth = r.witness.birth;
      out->death = r.witness.death;
    }
  });
}

rcf_status rcf_f_k(uint32_t n, uint32_t k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rcf::f_k(n, k);
  });
}

rcf_status rcf_adaptive_cap(uint32_t n, uint32_t k, double eps, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rcf::adaptive_cap(n, k, eps);
  });
}

rcf_status rcf_thresholds(uint32_t n, uint32_t k, double eps, double* birth_scale, double* death_scale) {
  return guarded([&] {
    require(birth_scale, "birth_scale");
    require(death_scale, "death_scale");
    const auto t = rcf::thresholds(n, k, eps);
    *birth_scale = t.birth_scale;
    *death_scale = t.death_scale;
  });
}

rcf_status rcf_expected_betti(uint32_t n, uint32_t k, double p, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rcf::expected_betti(n, k, p);
  });
}

rcf_status rcf_expected_special_cycles(uint32_t n, uint32_t k, double p1, double p2, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rcf::expected_special_cycles(n, k, p1, p2);
  });
}

rcf_status rcf_count_special_cycles(const rcf_filtration* f, uint32_t k, double p1, double p2, uint64_t* out) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    *out = rcf::count_special_cycles(f->value, k, p1, p2).count;
  });
}

rcf_status rcf_count_special_cycles_brute_force(const rcf_filtration* f, uint32_t k, double p1, double p2,
                                                uint64_t* out) {
  return guarded([&] {
    require(f, "filtration");
    require(out, "out");
    *out = rcf::count_special_cycles_brute_force(f->value, k, p1, p2).count;
  });
}

rcf_status rcf_witness_check(const rcf_filtration* f, uint32_t k, double p1, double p2, const rcf_diagram* d,
                             int* passed, uint64_t* special_cycles, char** report) {
  return guarded([&] {
    require(f, "filtration");
    require(d, "diagram");
    const auto r = rcf::witness_implies_persistence(f->value, k, p1, p2, d->value);
    if (passed) *passed = r.passed ? 1 : 0;
    if (special_cycles) *special_cycles = r.special_cycles;
    if (report) *report = copy_string(r.message);
  });
}

rcf_status rcf_config_normalize(const char* config_json, char** normalized_json) {
  return guarded([&] {
    require(config_json, "config_json");
    require(normalized_json, "normalized_json");
    *normalized_json = copy_string(rcf::config_to_json(rcf::config_from_json(config_json)));
  });
}

rcf_status rcf_run_experiment(const char* config_json, char** summary_json) {
  return guarded([&] {
    require(config_json, "config_json");
    const auto out = rcf::run_experiment(rcf::config_from_json(config_json));
    if (summary_json) *summary_json = copy_string(out.summary_json);
  });
}

}  // extern "C"
