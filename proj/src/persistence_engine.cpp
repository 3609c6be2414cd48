#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "rcf/error.hpp"
#include "rcf/io.hpp"
#include "persistence_internal.hpp"

namespace rcf {

bool is_prime(std::uint32_t value) {
  if (value < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= value; ++d)
    if (value % d == 0) return false;
  return true;
}

bool pair_less(const PersistencePair& a, const PersistencePair& b) {
  return std::tie(a.dim, a.birth, a.death, a.kind) < std::tie(b.dim, b.birth, b.death, b.kind);
}

PersistenceDiagram::PersistenceDiagram(std::uint32_t n, std::uint32_t k_max, double w_cap,
                                       std::uint32_t characteristic,
                                       std::vector<std::vector<PersistencePair>> pairs_by_degree)
    : n_(n), k_max_(k_max), w_cap_(w_cap), characteristic_(characteristic), pairs_(std::move(pairs_by_degree)) {
  pairs_.resize(k_max_ + 1);
  for (auto& degree : pairs_) std::sort(degree.begin(), degree.end(), pair_less);
}

std::span<const PersistencePair> PersistenceDiagram::pairs(std::uint32_t k) const {
  if (k > k_max_) invalid_parameter("degree " + std::to_string(k) + " was not computed");
  return pairs_[k];
}

bool PersistenceDiagram::has_pairs_at_cap(std::uint32_t k) const {
  const auto ps = pairs(k);
  return std::any_of(ps.begin(), ps.end(),
                     [](const PersistencePair& p) { return p.kind == DeathKind::EssentialAtCap; });
}

void check_persistence_args(const FlagFiltration& ff, std::uint32_t k_max, std::uint32_t characteristic) {
  if (!is_prime(characteristic) || characteristic >= (1u << 31))
    invalid_parameter("characteristic " + std::to_string(characteristic) + " is not a usable prime");
  if (k_max + 1 > ff.max_dim())
    invalid_parameter("k_max + 1 exceeds the filtration's max_dim");
}

DeathKind unpaired_kind(const FlagFiltration& ff, std::uint32_t dim, SimplexIndex index) {
  if (ff.complete() || (dim == 0 && index == 0)) return DeathKind::Essential;
  return DeathKind::EssentialAtCap;
}

namespace {

using Coefficient = std::uint32_t;

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {}

  Coefficient reduce(std::int64_t x) const {
    const std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Coefficient>(r < 0 ? r + p_ : r);
  }
  Coefficient add(Coefficient a, Coefficient b) const {
    const Coefficient s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coefficient mul(Coefficient a, Coefficient b) const {
    if (p_ == 2) return a & b;
    return static_cast<Coefficient>((std::uint64_t{a} * b) % p_);
  }
  Coefficient neg(Coefficient a) const { return a == 0 ? 0 : p_ - a; }
  Coefficient inverse(Coefficient a) const {
    // a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Coefficient>(result);
  }

 private:
  std::uint32_t p_;
};

// A coboundary entry: the position of a (d+1)-simplex in canonical order.
struct Entry {
  std::uint32_t position;
  Coefficient coefficient;
};

// The simplices of one dimension in canonical order, with a lookup from
// combinatorial index to position.
struct DimensionTable {
  std::vector<const FilteredSimplex*> simplices;
  std::unordered_map<SimplexIndex, std::uint32_t> position;

  DimensionTable(const FlagFiltration& ff, std::uint32_t dim) {
    for (const auto& s : ff.simplices())
      if (s.dim == dim) simplices.push_back(&s);
    position.reserve(simplices.size());
    for (std::uint32_t i = 0; i < simplices.size(); ++i) position.emplace(simplices[i]->index, i);
  }
};

class CoboundaryReducer {
 public:
  CoboundaryReducer(const FlagFiltration& ff, std::uint32_t characteristic)
      : ff_(ff), ef_(ff.edge_filtration()), binom_(ff.binomials()), field_(characteristic) {}

  // Coboundary of the d-simplex `vertices`, sorted by position.
  void coboundary(std::span<const Vertex> vertices, const DimensionTable& cofacets, std::vector<Entry>& out) const {
    out.clear();
    const std::size_t len = vertices.size();
    // scan the shortest neighbor list
    Vertex pivot_vertex = vertices[0];
    for (Vertex v : vertices)
      if (ff_.neighbors(v).size() < ff_.neighbors(pivot_vertex).size()) pivot_vertex = v;
    const double cap = ff_.w_cap();
    for (Vertex w : ff_.neighbors(pivot_vertex)) {
      bool ok = true;
      for (Vertex v : vertices)
        if (v == w || (v != pivot_vertex && ef_.weight(v, w) > cap)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      // position of w among the cofacet's sorted vertices
      std::size_t slot = 0;
      while (slot < len && vertices[slot] < w) ++slot;
      SimplexIndex index = binom_(w, static_cast<std::uint32_t>(slot + 1));
      for (std::size_t i = 0; i < len; ++i)
        index += binom_(vertices[i], static_cast<std::uint32_t>(i < slot ? i + 1 : i + 2));
      const Coefficient sign = (slot % 2 == 0) ? 1 : field_.neg(1);
      out.push_back({cofacets.position.at(index), sign});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.position < b.position; });
  }

  // Reduces the coboundary columns of the dimension-`dim` simplices whose
  // `cleared` flag (by canonical position) is unset. Returns the flags for
  // dimension dim + 1: the deaths found here.
  std::vector<char> reduce_dimension(std::uint32_t dim, const DimensionTable& columns, const DimensionTable& cofacets,
                                     const std::vector<char>& cleared, std::vector<PersistencePair>& pairs) {
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> pivot_column(cofacets.simplices.size(), none);
    std::vector<std::vector<Entry>> reduced;
    std::vector<char> deaths(cofacets.simplices.size(), 0);
    std::vector<Entry> working, scratch;
    std::vector<Vertex> vertices;

    for (std::size_t i = columns.simplices.size(); i-- > 0;) {
      if (cleared[i]) continue;
      const FilteredSimplex& s = *columns.simplices[i];
      vertices = simplex_unrank(s.index, dim + 1, ff_.n(), binom_);
      coboundary(vertices, cofacets, working);
      while (!working.empty()) {
        const std::uint32_t other_column = pivot_column[working.front().position];
        if (other_column == none) break;
        const auto& other = reduced[other_column];
        const Coefficient factor =
            field_.neg(field_.mul(working.front().coefficient, field_.inverse(other.front().coefficient)));
        add_scaled(working, other, factor, scratch);
        working.swap(scratch);
      }
      if (working.empty()) {
        pairs.push_back({dim, s.value, std::numeric_limits<double>::infinity(), unpaired_kind(ff_, dim, s.index)});
        continue;
      }
      const std::uint32_t pivot = working.front().position;
      const double death = cofacets.simplices[pivot]->value;
      deaths[pivot] = 1;
      if (death > s.value) pairs.push_back({dim, s.value, death, DeathKind::Finite});
      pivot_column[pivot] = static_cast<std::uint32_t>(reduced.size());
      reduced.push_back(std::move(working));
      working = {};
    }
    return deaths;
  }

 private:
  // out = a + factor * b, both sorted.
  void add_scaled(const std::vector<Entry>& a, const std::vector<Entry>& b, Coefficient factor,
                  std::vector<Entry>& out) const {
    out.clear();
    out.reserve(a.size() + b.size());
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (i->position < j->position) {
        out.push_back(*i++);
      } else if (j->position < i->position) {
        out.push_back({j->position, field_.mul(factor, j->coefficient)});
        ++j;
      } else {
        const Coefficient c = field_.add(i->coefficient, field_.mul(factor, j->coefficient));
        if (c != 0) out.push_back({i->position, c});
        ++i;
        ++j;
      }
    }
    out.insert(out.end(), i, a.end());
    for (; j != b.end(); ++j) out.push_back({j->position, field_.mul(factor, j->coefficient)});
  }

  const FlagFiltration& ff_;
  const EdgeFiltration& ef_;
  const BinomialTable& binom_;
  PrimeField field_;
};

// Degree 0 by union-find with the elder rule. Returns flags, by canonical
// position among the edges, for the edges that merge components.
std::vector<char> connected_components(const FlagFiltration& ff, const DimensionTable& edges,
                                       std::vector<PersistencePair>& pairs) {
  std::vector<Vertex> parent(ff.n());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<char> deaths(edges.simplices.size(), 0);
  for (std::size_t i = 0; i < edges.simplices.size(); ++i) {
    const FilteredSimplex& s = *edges.simplices[i];
    const auto vs = ff.vertices(s);
    const Vertex a = find(vs[0]), b = find(vs[1]);
    if (a == b) continue;
    // the component with the younger (larger) oldest vertex dies
    parent[std::max(a, b)] = std::min(a, b);
    deaths[i] = 1;
    if (s.value > 0.0) pairs.push_back({0, 0.0, s.value, DeathKind::Finite});
  }
  for (Vertex v = 0; v < ff.n(); ++v)
    if (find(v) == v)
      pairs.push_back({0, 0.0, std::numeric_limits<double>::infinity(), unpaired_kind(ff, 0, v)});
  return deaths;
}

}  // namespace

PersistenceDiagram compute_persistence(const FlagFiltration& ff, std::uint32_t k_max,
                                       std::uint32_t characteristic) {
  check_persistence_args(ff, k_max, characteristic);
  std::vector<std::vector<PersistencePair>> pairs(k_max + 1);
  DimensionTable columns(ff, 1);
  auto cleared = connected_components(ff, columns, pairs[0]);
  CoboundaryReducer reducer(ff, characteristic);
  for (std::uint32_t dim = 1; dim <= k_max; ++dim) {
    DimensionTable cofacets(ff, dim + 1);
    cleared = reducer.reduce_dimension(dim, columns, cofacets, cleared, pairs[dim]);
    columns = std::move(cofacets);
  }
  return PersistenceDiagram(ff.n(), k_max, ff.w_cap(), characteristic, std::move(pairs));
}

std::size_t betti_at(const PersistenceDiagram& dg, std::uint32_t k, double t) {
  if (!(t >= 0.0)) invalid_parameter("threshold must be nonnegative");
  if (t > dg.w_cap()) invalid_parameter("threshold " + format_double(t) + " exceeds the weight cap");
  std::size_t count = 0;
  for (const auto& p : dg.pairs(k))
    if (p.birth <= t && t < p.death) ++count;
  return count;
}

std::string diagram_to_csv(const PersistenceDiagram& dg) {
  std::string out = "dim,birth,death\n";
  for (std::uint32_t k = 0; k <= dg.k_max(); ++k)
    for (const auto& p : dg.pairs(k)) {
      out += std::to_string(p.dim);
      out += ',';
      out += format_double(p.birth);
      out += ',';
      switch (p.kind) {
        case DeathKind::Finite: out += format_double(p.death); break;
        case DeathKind::Essential: out += "inf"; break;
        case DeathKind::EssentialAtCap: out += "cap"; break;
      }
      out += '\n';
    }
  return out;
}

void save_diagram(const PersistenceDiagram& dg, const std::filesystem::path& path) {
  write_text_file(path, diagram_to_csv(dg));
}

}  // namespace rcf
