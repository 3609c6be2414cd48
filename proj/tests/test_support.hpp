#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rcf/error.hpp"
#include "rcf/filtration_model.hpp"

namespace testing {

using Triple = std::pair<std::pair<rcf::Vertex, rcf::Vertex>, double>;

// 1-based (u, v, weight) rows, as written in the worked examples.
inline rcf::EdgeFiltration from_rows(std::uint32_t n, std::vector<Triple> rows, double rest = 1.0) {
  std::vector<Triple> triples;
  for (rcf::Vertex u = 0; u < n; ++u)
    for (rcf::Vertex v = u + 1; v < n; ++v) {
      double w = rest;
      for (const auto& [e, x] : rows)
        if ((e.first == u + 1 && e.second == v + 1) || (e.first == v + 1 && e.second == u + 1)) w = x;
      triples.push_back({{u, v}, w});
    }
  return rcf::edge_filtration_from_triples(n, triples);
}

// 4-cycle 1-2-3-4 completed at 0.4, diagonals 13 at 0.8 and 24 at 0.9.
inline rcf::EdgeFiltration square() {
  return from_rows(4, {{{1, 2}, 0.1}, {{2, 3}, 0.2}, {{3, 4}, 0.3}, {{1, 4}, 0.4}, {{1, 3}, 0.8}, {{2, 4}, 0.9}});
}

// Cross-polytope 1-cycle on {1,2,3,4} with U = {1,2}, V = {3,4}.
inline rcf::EdgeFiltration special_hexagon() {
  return from_rows(6,
                   {{{1, 4}, 0.1}, {{2, 3}, 0.1}, {{1, 2}, 0.1}, {{3, 4}, 0.1}, {{1, 3}, 0.95}, {{2, 4}, 0.95},
                    {{1, 5}, 0.95}, {{1, 6}, 0.95}, {{2, 5}, 0.95}, {{2, 6}, 0.95}},
                   0.5);
}

// Code of the rcf::Error thrown by f, or nothing if f returns normally.
template <class F>
std::optional<rcf::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const rcf::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("rcf-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
