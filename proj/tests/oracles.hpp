#pragma once

// Slow, independent reference computations used by the tests. Nothing here
// calls into the library except EdgeFiltration::weight for raw data.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rcf/filtration_model.hpp"

namespace oracle {

using Mask = std::uint32_t;

struct Clique {
  Mask vertices;
  double value;
};

inline double edge(const rcf::EdgeFiltration& ef, int u, int v) {
  return ef.weight(static_cast<rcf::Vertex>(u), static_cast<rcf::Vertex>(v));
}

// Every clique of X(t) as a vertex bitmask, grouped by dimension.
inline std::vector<std::vector<Clique>> cliques(const rcf::EdgeFiltration& ef, double t, int max_dim) {
  const int n = static_cast<int>(ef.n());
  std::vector<std::vector<Clique>> out(max_dim + 1);
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    const int dim = std::popcount(m) - 1;
    if (dim > max_dim) continue;
    double value = 0.0;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if ((m >> u & 1) && (m >> v & 1)) {
          value = std::max(value, edge(ef, u, v));
          if (value > t) ok = false;
        }
    if (ok) out[dim].push_back({m, value});
  }
  return out;
}

using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

inline std::int64_t inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a = mod(a, p);
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Row echelon form over F_p; returns the rank.
inline std::size_t rank(Matrix m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && mod(m[pivot][c], p) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[r], m[pivot]);
    const std::int64_t inv = inverse(m[r][c], p);
    for (auto& x : m[r]) x = mod(x * inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || mod(m[i][c], p) == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], p);
    }
    ++r;
  }
  return r;
}

// Basis of the null space of m (rows x cols) over F_p, as column vectors.
inline std::vector<std::vector<std::int64_t>> null_space(Matrix m, std::size_t cols, std::int64_t p) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && mod(m[pivot][c], p) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[r], m[pivot]);
    const std::int64_t inv = inverse(m[r][c], p);
    for (auto& x : m[r]) x = mod(x * inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || mod(m[i][c], p) == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], p);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = mod(-m[i][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Boundary map from `faces_hi` (dimension d) to `faces_lo` (dimension d-1),
// rows indexed by faces_lo.
inline Matrix boundary(const std::vector<Clique>& faces_lo, const std::vector<Clique>& faces_hi) {
  Matrix m(faces_lo.size(), std::vector<std::int64_t>(faces_hi.size(), 0));
  for (std::size_t j = 0; j < faces_hi.size(); ++j) {
    const Mask s = faces_hi[j].vertices;
    int slot = 0;
    for (int v = 0; v < 32; ++v) {
      if (!(s >> v & 1)) continue;
      const Mask face = s & ~(Mask{1} << v);
      for (std::size_t i = 0; i < faces_lo.size(); ++i)
        if (faces_lo[i].vertices == face) m[i][j] = (slot % 2 == 0) ? 1 : -1;
      ++slot;
    }
  }
  return m;
}

inline std::size_t boundary_rank(const std::vector<std::vector<Clique>>& cx, int d, std::int64_t p) {
  if (d <= 0 || d >= static_cast<int>(cx.size()) || cx[d].empty() || cx[d - 1].empty()) return 0;
  return rank(boundary(cx[d - 1], cx[d]), p);
}

// beta_k of X(t) by rank-nullity.
inline std::size_t betti(const rcf::EdgeFiltration& ef, double t, int k, std::int64_t p) {
  const auto cx = cliques(ef, t, k + 1);
  return cx[k].size() - boundary_rank(cx, k, p) - boundary_rank(cx, k + 1, p);
}

// Rank of H_k(X(p1)) -> H_k(X(p2)): dim(Z_k(p1) + B_k(p2)) - dim B_k(p2).
inline std::size_t persistent_rank(const rcf::EdgeFiltration& ef, double p1, double p2, int k, std::int64_t p) {
  const auto big = cliques(ef, p2, k + 1);
  const auto& chains = big[k];
  std::vector<Clique> small;
  for (const auto& c : chains)
    if (c.value <= p1) small.push_back(c);
  if (small.empty()) return 0;

  std::vector<std::vector<std::int64_t>> cycles;
  if (k == 0) {
    for (std::size_t i = 0; i < small.size(); ++i) {
      std::vector<std::int64_t> e(small.size(), 0);
      e[i] = 1;
      cycles.push_back(e);
    }
  } else {
    const auto lo = cliques(ef, p1, k - 1)[k - 1];
    cycles = null_space(boundary(lo, small), small.size(), p);
  }
  if (cycles.empty()) return 0;

  // columns: boundaries at p2, then cycles at p1 lifted to the chains at p2
  Matrix b = k + 1 < static_cast<int>(big.size()) && !big[k + 1].empty()
                 ? boundary(chains, big[k + 1])
                 : Matrix(chains.size(), std::vector<std::int64_t>{});
  const std::size_t b_rank = b.empty() || b[0].empty() ? 0 : rank(b, p);
  Matrix joint = b;
  for (const auto& z : cycles) {
    std::size_t si = 0;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      std::int64_t coeff = 0;
      if (si < small.size() && small[si].vertices == chains[i].vertices) coeff = z[si++];
      joint[i].push_back(coeff);
    }
  }
  return rank(joint, p) - b_rank;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Direct subset enumeration of (p1, p2) special cycles; n <= 24.
inline std::uint64_t special_cycles(const rcf::EdgeFiltration& ef, int k, double p1, double p2) {
  const int n = static_cast<int>(ef.n());
  const int size = 2 * k + 2;
  if (n < size) return 0;
  std::uint64_t count = 0;
  for (Mask y = 0; y < (Mask{1} << n); ++y) {
    if (std::popcount(y) != size) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (y >> v & 1) vs.push_back(v);
    bool ok = true;
    for (int a = 0; a < size && ok; ++a)
      for (int b = a + 1; b < size && ok; ++b) {
        const double w = edge(ef, vs[a], vs[b]);
        const bool antipodal = b == a + k + 1;
        ok = antipodal ? w > p2 : w <= p1;
      }
    for (int x = 0; x < n && ok; ++x) {
      if (y >> x & 1) continue;
      bool joined = true;
      for (int a = 0; a <= k && joined; ++a) joined = edge(ef, x, vs[a]) <= p2;
      if (joined) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

// C(n, 2k+2) p1^(2k(k+1)) (1-p2)^(k+1) (1-p2^(k+1))^(n-2k-2), plain arithmetic.
inline double expected_special_cycles(int n, int k, double p1, double p2) {
  if (n < 2 * k + 2) return 0.0;
  return binomial(n, 2 * k + 2) * std::pow(p1, 2 * k * (k + 1)) * std::pow(1.0 - p2, k + 1) *
         std::pow(1.0 - std::pow(p2, k + 1), n - 2 * k - 2);
}

}  // namespace oracle
