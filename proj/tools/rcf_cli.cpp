// rcf: command-line front end over the C API.
//
// Every subcommand prints one JSON document on stdout,
//   {"command": ..., "config": <effective config>, "result": ...}
// and, on failure, {"error": <status name>, "message": ...} on stderr with a
// nonzero exit code.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcf/rcf.h"

using nlohmann::json;

namespace {

struct Failure {
  std::string error;
  std::string message;
  int exit_code;
};

void check(rcf_status status) {
  if (status != RCF_OK) throw Failure{rcf_status_name(status), rcf_last_error(), static_cast<int>(status)};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{"usage", message, 64}; }

std::string take_string(char* s) {
  std::string out(s ? s : "");
  rcf_string_free(s);
  return out;
}

struct FiltrationDeleter {
  void operator()(rcf_filtration* f) const { rcf_filtration_free(f); }
};
struct DiagramDeleter {
  void operator()(rcf_diagram* d) const { rcf_diagram_free(d); }
};
using Filtration = std::unique_ptr<rcf_filtration, FiltrationDeleter>;
using Diagram = std::unique_ptr<rcf_diagram, DiagramDeleter>;

// Options shared by all subcommands; only those given on the command line
// override the --config document.
struct Overrides {
  std::string config;
  std::uint64_t seed = 0;
  std::uint32_t workers = 1;
  std::string out_dir;

  std::uint32_t n = 0, k = 0, grid_points = 0, bins = 0, characteristic = 0, cap_retries = 0;
  std::uint64_t samples = 0;
  double eps = 0, band_lower = 0, band_upper = 0, cap_eps = 0, cap_escalation = 0;
  std::vector<std::string> pairs;

  std::vector<std::pair<std::string, CLI::Option*>> given;
};

void add_global_options(CLI::App& app, Overrides& o) {
  o.given.emplace_back("config", app.add_option("--config", o.config, "JSON config file, or an inline JSON object"));
  o.given.emplace_back("master_seed", app.add_option("--seed", o.seed, "Master seed"));
  o.given.emplace_back("workers", app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber));
  o.given.emplace_back("out_dir", app.add_option("--out-dir", o.out_dir, "Output directory"));
}

void add_model_options(CLI::App& sub, Overrides& o) {
  o.given.emplace_back("n", sub.add_option("--n", o.n, "Number of vertices"));
  o.given.emplace_back("k", sub.add_option("--k", o.k, "Homological degree"));
  o.given.emplace_back("characteristic", sub.add_option("--characteristic", o.characteristic, "Coefficient prime"));
  o.given.emplace_back("cap_policy.initial_eps", sub.add_option("--cap-eps", o.cap_eps, "Initial cap eps"));
  o.given.emplace_back("cap_policy.escalation", sub.add_option("--cap-escalation", o.cap_escalation, "Cap growth factor"));
  o.given.emplace_back("cap_policy.max_retries", sub.add_option("--cap-retries", o.cap_retries, "Cap escalations allowed"));
}

void add_experiment_options(CLI::App& sub, Overrides& o) {
  add_model_options(sub, o);
  o.given.emplace_back("samples", sub.add_option("--samples", o.samples, "Number of samples"));
  o.given.emplace_back("eps", sub.add_option("--eps", o.eps, "eps of the threshold window"));
  o.given.emplace_back("pairs", sub.add_option("--pairs", o.pairs, "Threshold pairs p1:p2 (comma separated)")->delimiter(','));
  o.given.emplace_back("grid_points", sub.add_option("--grid-points", o.grid_points, "Points of the threshold grid"));
  o.given.emplace_back("bins", sub.add_option("--bins", o.bins, "Histogram bins"));
  o.given.emplace_back("band_lower", sub.add_option("--band-lower", o.band_lower, "Reporting band lower end"));
  o.given.emplace_back("band_upper", sub.add_option("--band-upper", o.band_upper, "Reporting band upper end"));
}

json read_config(const std::string& source) {
  if (source.empty()) return json::object();
  std::string text = source;
  if (source.find('{') == std::string::npos) {
    std::ifstream in(source);
    if (!in) throw Failure{rcf_status_name(RCF_ERR_IO), "cannot read config file '" + source + "'", RCF_ERR_IO};
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Failure{rcf_status_name(RCF_ERR_PARSE), std::string("config: ") + e.what(), RCF_ERR_PARSE};
  }
}

std::vector<std::pair<double, double>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<double, double>> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) usage_error("pair '" + item + "' must look like p1:p2");
    try {
      out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      usage_error("pair '" + item + "' is not numeric");
    }
  }
  return out;
}

// Config document after --config, flag overrides and validation by the library.
json effective_config(const Overrides& o, const char* kind) {
  json doc = read_config(o.config);
  if (!doc.is_object()) throw Failure{rcf_status_name(RCF_ERR_PARSE), "config must be a JSON object", RCF_ERR_PARSE};
  if (kind) doc["kind"] = kind;
  for (const auto& [key, opt] : o.given) {
    if (opt->count() == 0 || key == "config") continue;
    if (key == "master_seed") doc[key] = o.seed;
    else if (key == "workers") doc[key] = o.workers;
    else if (key == "out_dir") doc[key] = o.out_dir;
    else if (key == "n") doc[key] = o.n;
    else if (key == "k") doc[key] = o.k;
    else if (key == "characteristic") doc[key] = o.characteristic;
    else if (key == "samples") doc[key] = o.samples;
    else if (key == "eps") doc[key] = o.eps;
    else if (key == "pairs") doc[key] = parse_pairs(o.pairs);
    else if (key == "grid_points") doc[key] = o.grid_points;
    else if (key == "bins") doc[key] = o.bins;
    else if (key == "band_lower") doc[key] = o.band_lower;
    else if (key == "band_upper") doc[key] = o.band_upper;
    else if (key == "cap_policy.initial_eps") doc["cap_policy"]["initial_eps"] = o.cap_eps;
    else if (key == "cap_policy.escalation") doc["cap_policy"]["escalation"] = o.cap_escalation;
    else if (key == "cap_policy.max_retries") doc["cap_policy"]["max_retries"] = o.cap_retries;
  }
  char* normalized = nullptr;
  check(rcf_config_normalize(doc.dump().c_str(), &normalized));
  json cfg = json::parse(take_string(normalized));
  if (cfg.at("out_dir").get<std::string>().empty()) cfg["out_dir"] = "rcf_out";
  return cfg;
}

std::string join(const std::string& dir, const std::string& name) { return dir + "/" + name; }

Filtration make_filtration(const json& cfg, const std::string& edges, std::uint64_t index) {
  rcf_filtration* f = nullptr;
  if (!edges.empty())
    check(rcf_filtration_load_csv(edges.c_str(), &f));
  else
    check(rcf_filtration_sample(cfg.at("n").get<std::uint32_t>(), cfg.at("master_seed").get<std::uint64_t>(), index,
                                &f));
  return Filtration(f);
}

json diagram_json(const rcf_diagram* d) {
  json degrees = json::array();
  for (std::uint32_t k = 0; k <= rcf_diagram_k_max(d); ++k) {
    std::size_t finite = 0, essential = 0, at_cap = 0;
    for (std::size_t i = 0; i < rcf_diagram_pair_count(d, k); ++i) {
      double b = 0, e = 0;
      rcf_death_kind kind = RCF_DEATH_FINITE;
      check(rcf_diagram_pair(d, k, i, &b, &e, &kind));
      (kind == RCF_DEATH_FINITE ? finite : kind == RCF_DEATH_ESSENTIAL ? essential : at_cap)++;
    }
    degrees.push_back({{"k", k}, {"finite", finite}, {"essential", essential}, {"alive_at_cap", at_cap}});
  }
  return degrees;
}

json run_sample_command(const json& cfg, std::uint64_t index) {
  const auto f = make_filtration(cfg, "", index);
  const std::string path = join(cfg.at("out_dir"), "edges.csv");
  check(rcf_filtration_save_csv(f.get(), path.c_str()));
  return {{"edges", path}, {"n", rcf_filtration_n(f.get())}};
}

json run_persist_command(const json& cfg, const std::string& edges, std::uint64_t index, double cap, bool naive,
                         bool export_filtration) {
  const auto f = make_filtration(cfg, edges, index);
  const auto k = cfg.at("k").get<std::uint32_t>();
  const auto p = cfg.at("characteristic").get<std::uint32_t>();
  rcf_diagram* raw = nullptr;
  double cap_used = cap;
  std::uint32_t retries = 0;
  if (cap > 0.0) {
    check(naive ? rcf_compute_persistence_naive(f.get(), k, cap, p, &raw)
                : rcf_compute_persistence(f.get(), k, cap, p, &raw));
  } else {
    const auto& policy = cfg.at("cap_policy");
    check(rcf_compute_persistence_auto(f.get(), k, p, policy.at("initial_eps"), policy.at("escalation"),
                                       policy.at("max_retries"), &raw, &cap_used, &retries));
  }
  const Diagram d(raw);
  const std::string path = join(cfg.at("out_dir"), "diagram.csv");
  check(rcf_diagram_save_csv(d.get(), path.c_str()));
  json result = {{"diagram", path}, {"cap", cap_used}, {"retries", retries}, {"degrees", diagram_json(d.get())}};
  if (export_filtration) {
    const std::string ff = join(cfg.at("out_dir"), "flag_filtration.txt");
    check(rcf_export_flag_filtration(f.get(), k + 1, cap_used, ff.c_str()));
    result["flag_filtration"] = ff;
  }
  json maxima = json::array();
  for (std::uint32_t d_k = 1; d_k <= k; ++d_k) {
    rcf_max_persistence_result m{};
    const rcf_status s = rcf_max_persistence(d.get(), d_k, &m);
    if (s == RCF_ERR_CAP_INSUFFICIENT) {
      maxima.push_back({{"k", d_k}, {"M_k", "alive-at-cap"}});
      continue;
    }
    check(s);
    if (!m.defined)
      maxima.push_back({{"k", d_k}, {"M_k", nullptr}});
    else
      maxima.push_back({{"k", d_k}, {"M_k", m.max_ratio}, {"M_tilde", m.normalized}, {"ratio_f", m.ratio_to_scale},
                        {"birth", m.birth}, {"death", m.death}});
  }
  result["max_persistence"] = maxima;
  return result;
}

json run_experiment_command(const json& cfg) {
  char* summary = nullptr;
  check(rcf_run_experiment(cfg.dump().c_str(), &summary));
  return json::parse(take_string(summary));
}

void emit(const std::string& command, const json& cfg, const json& result) {
  std::cout << json{{"command", command}, {"config", cfg}, {"result", result}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology of random clique complex filtrations"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  add_global_options(app, o);

  std::uint64_t index = 0;
  std::string edges;
  double cap = 0.0;
  bool naive = false, export_filtration = false;
  std::uint64_t figure_samples = 1000;

  auto* sample = app.add_subcommand("sample", "Sample one edge filtration and write it as CSV");
  add_model_options(*sample, o);
  sample->add_option("--index", index, "Sample index");

  auto* persist = app.add_subcommand("persist", "Persistence diagram of one filtration");
  add_model_options(*persist, o);
  persist->add_option("--index", index, "Sample index (ignored with --edges)");
  persist->add_option("--edges", edges, "Edge filtration CSV to read instead of sampling");
  persist->add_option("--cap", cap, "Weight cap; omitted means the automatic cap policy");
  persist->add_flag("--naive", naive, "Use the textbook reduction (requires --cap)");
  persist->add_flag("--export-filtration", export_filtration, "Also write the clique filtration as text");

  auto* maxpers = app.add_subcommand("maxpers", "Maximal multiplicative persistence experiment");
  add_experiment_options(*maxpers, o);
  auto* special = app.add_subcommand("special", "Special persistent cycle counts experiment");
  add_experiment_options(*special, o);
  auto* rank = app.add_subcommand("rank", "Rank-invariant sweep over threshold pairs");
  add_experiment_options(*rank, o);
  auto* sweep = app.add_subcommand("sweep", "Betti numbers across the threshold grid");
  add_experiment_options(*sweep, o);
  auto* figures = app.add_subcommand("figures", "Degree-1 (n=250) and degree-2 (n=150) max-persistence runs");
  figures->add_option("--samples", figure_samples, "Samples per run");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      usage_error(e.what());
    }

    if (*sample) {
      auto cfg = effective_config(o, nullptr);
      cfg["index"] = index;
      emit("sample", cfg, run_sample_command(cfg, index));
    } else if (*persist) {
      if (naive && cap <= 0.0) usage_error("--naive needs an explicit --cap");
      auto cfg = effective_config(o, nullptr);
      cfg["index"] = index;
      cfg["edges"] = edges;
      cfg["cap"] = cap > 0.0 ? json(cap) : json("auto");
      cfg["naive"] = naive;
      emit("persist", cfg, run_persist_command(cfg, edges, index, cap, naive, export_filtration));
    } else if (*maxpers) {
      const auto cfg = effective_config(o, "max-persistence");
      emit("maxpers", cfg, run_experiment_command(cfg));
    } else if (*special) {
      const auto cfg = effective_config(o, "special-cycles");
      emit("special", cfg, run_experiment_command(cfg));
    } else if (*rank) {
      const auto cfg = effective_config(o, "rank-sweep");
      emit("rank", cfg, run_experiment_command(cfg));
    } else if (*sweep) {
      const auto cfg = effective_config(o, "betti-curve");
      emit("sweep", cfg, run_experiment_command(cfg));
    } else if (*figures) {
      const auto base = effective_config(o, "max-persistence");
      json runs = json::object(), configs = json::object();
      for (const auto& [name, n, k] : {std::tuple{"figure1", 250u, 1u}, std::tuple{"figure2", 150u, 2u}}) {
        json cfg = base;
        cfg["n"] = n;
        cfg["k"] = k;
        cfg["samples"] = figure_samples;
        cfg["out_dir"] = join(base.at("out_dir"), name);
        configs[name] = cfg;
        runs[name] = run_experiment_command(cfg);
      }
      emit("figures", configs, runs);
    }
  } catch (const Failure& f) {
    std::cerr << json{{"error", f.error}, {"message", f.message}}.dump() << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 99;
  }
  return 0;
}
