#include "rcf/filtration_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rcf/error.hpp"
#include "rcf/io.hpp"
#include "rcf/rng.hpp"

namespace rcf {

namespace {

std::size_t pair_count(std::uint32_t n) {
  return static_cast<std::size_t>(n) * (n - 1) / 2;
}

void check_weight(double w) {
  if (!(w > 0.0 && w <= 1.0))
    invalid_parameter("edge weight " + format_double(w) + " outside (0, 1]");
}

}  // namespace

EdgeFiltration::EdgeFiltration(std::uint32_t n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
  if (n_ == 0) invalid_parameter("vertex count must be positive");
  if (weights_.size() != pair_count(n_))
    invalid_parameter("expected " + std::to_string(pair_count(n_)) + " weights, got " +
                      std::to_string(weights_.size()));
  for (double w : weights_) check_weight(w);
}

EdgeFiltration EdgeFiltration::relabeled(std::span<const Vertex> relabel) const {
  if (relabel.size() != n_) invalid_parameter("relabeling must cover every vertex");
  std::vector<bool> seen(n_, false);
  for (Vertex v : relabel) {
    if (v >= n_ || seen[v]) invalid_parameter("relabeling is not a permutation");
    seen[v] = true;
  }
  std::vector<double> out(weights_.size());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v) out[pair_offset(relabel[u], relabel[v])] = weight(u, v);
  return EdgeFiltration(n_, std::move(out));
}

EdgeFiltration EdgeFiltration::scaled(double factor) const {
  if (!(factor > 0.0 && factor <= 1.0)) invalid_parameter("scale factor outside (0, 1]");
  std::vector<double> out(weights_);
  for (double& w : out) w *= factor;
  return EdgeFiltration(n_, std::move(out));
}

EdgeFiltration edge_filtration_from_triples(
    std::uint32_t n, std::span<const std::pair<std::pair<Vertex, Vertex>, double>> triples) {
  if (n == 0) invalid_parameter("vertex count must be positive");
  std::vector<double> weights(pair_count(n), -1.0);
  for (const auto& [edge, w] : triples) {
    auto [u, v] = edge;
    if (u == v || u >= n || v >= n) invalid_parameter("edge endpoint out of range or self-loop");
    if (u > v) std::swap(u, v);
    const std::size_t offset = static_cast<std::size_t>(u) * n -
                               static_cast<std::size_t>(u) * (u + 1) / 2 + (v - u - 1);
    if (weights[offset] >= 0.0) invalid_parameter("duplicate edge");
    weights[offset] = w;
  }
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; }))
    invalid_parameter("missing edge weight");
  return EdgeFiltration(n, std::move(weights));
}

EdgeFiltration sample_filtration(std::uint32_t n, std::uint64_t master_seed,
                                 std::uint64_t sample_index) {
  if (n == 0) invalid_parameter("vertex count must be positive");
  std::mt19937_64 engine(sample_seed(master_seed, sample_index));
  std::vector<double> weights(pair_count(n));
  for (double& w : weights) w = unit_interval_open_closed(engine());
  return EdgeFiltration(n, std::move(weights));
}

bool GraphSnapshot::adjacent(Vertex u, Vertex v) const {
  const auto& row = adjacency_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

std::size_t GraphSnapshot::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& row : adjacency_) degree_sum += row.size();
  return degree_sum / 2;
}

std::vector<std::pair<Vertex, Vertex>> GraphSnapshot::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

GraphSnapshot snapshot(const EdgeFiltration& ef, double p) {
  if (!(p >= 0.0 && p <= 1.0)) invalid_parameter("snapshot threshold outside [0, 1]");
  std::vector<std::vector<Vertex>> adjacency(ef.n());
  for (Vertex u = 0; u < ef.n(); ++u)
    for (Vertex v = u + 1; v < ef.n(); ++v)
      if (ef.weight(u, v) <= p) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
      }
  for (auto& row : adjacency) std::sort(row.begin(), row.end());
  return GraphSnapshot(ef.n(), p, std::move(adjacency));
}

std::string edge_filtration_to_csv(const EdgeFiltration& ef) {
  std::string out = "u,v,weight\n";
  out.reserve(out.size() + ef.edge_count() * 32);
  for (Vertex u = 0; u < ef.n(); ++u)
    for (Vertex v = u + 1; v < ef.n(); ++v) {
      out += std::to_string(u + 1);
      out += ',';
      out += std::to_string(v + 1);
      out += ',';
      out += format_double(ef.weight(u, v));
      out += '\n';
    }
  return out;
}

EdgeFiltration edge_filtration_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty edge CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,weight") throw Error(ErrorCode::Parse, "edge CSV header must be 'u,v,weight'");

  std::vector<std::pair<std::pair<Vertex, Vertex>, double>> triples;
  std::uint32_t n = 1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw Error(ErrorCode::Parse, "edge CSV line " + std::to_string(line_no) + ": expected 3 fields");
    const double u = parse_double(fields[0]);
    const double v = parse_double(fields[1]);
    if (u < 1 || v < 1 || u != std::floor(u) || v != std::floor(v))
      throw Error(ErrorCode::Parse, "edge CSV line " + std::to_string(line_no) + ": bad vertex");
    triples.push_back({{static_cast<Vertex>(u) - 1, static_cast<Vertex>(v) - 1},
                       parse_double(fields[2])});
    n = std::max({n, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
  }
  return edge_filtration_from_triples(n, triples);
}

void save_edge_filtration(const EdgeFiltration& ef, const std::filesystem::path& path) {
  write_text_file(path, edge_filtration_to_csv(ef));
}

EdgeFiltration load_edge_filtration(const std::filesystem::path& path) {
  try {
    return edge_filtration_from_csv(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace rcf
