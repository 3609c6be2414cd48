#include "rcf/special_cycles.hpp"

#include <algorithm>
#include <cmath>

#include "rcf/error.hpp"
#include "rcf/io.hpp"
#include "rcf/stats.hpp"

namespace rcf {

std::vector<Vertex> SpecialCycleWitness::vertex_set() const {
  std::vector<Vertex> y(u);
  y.insert(y.end(), v.begin(), v.end());
  return y;
}

namespace {

void check_query(std::uint32_t k, double p1, double p2) {
  if (k < 1) invalid_parameter("special cycles need k >= 1");
  if (!(p1 > 0.0 && p2 <= 1.0)) invalid_parameter("special cycles need 0 < p1 <= p2 <= 1");
  if (p1 > p2) invalid_parameter("p1 = " + format_double(p1) + " exceeds p2 = " + format_double(p2));
}

// Literal check of conditions (1)-(3) for the sorted vertex set y.
bool is_special(const EdgeFiltration& ef, std::span<const Vertex> y, std::uint32_t k, double p1, double p2) {
  const std::size_t half = k + 1;
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b) {
      const bool antipodal = a < half && b == a + half;
      const double w = ef.weight(y[a], y[b]);
      if (antipodal ? !(w > p2) : !(w <= p1)) return false;
    }
  for (Vertex w = 0; w < ef.n(); ++w) {
    if (std::find(y.begin(), y.end(), w) != y.end()) continue;
    bool common = true;
    for (std::size_t i = 0; i < half && common; ++i) common = ef.weight(w, y[i]) <= p2;
    if (common) return false;
  }
  return true;
}

SpecialCycleWitness make_witness(std::span<const Vertex> y, std::uint32_t k, double p1, double p2) {
  SpecialCycleWitness w;
  w.u.assign(y.begin(), y.begin() + k + 1);
  w.v.assign(y.begin() + k + 1, y.end());
  w.p1 = p1;
  w.p2 = p2;
  return w;
}

class SpecialCycleSearch {
 public:
  SpecialCycleSearch(const EdgeFiltration& ef, std::uint32_t k, double p1, double p2, SpecialCycleCount& out,
                     bool collect)
      : ef_(ef), k_(k), p1_(p1), p2_(p2), out_(out), collect_(collect), higher_(ef.n()) {
    for (Vertex a = 0; a < ef.n(); ++a)
      for (Vertex b = a + 1; b < ef.n(); ++b)
        if (ef.weight(a, b) <= p1) higher_[a].push_back(b);
  }

  void run() {
    for (Vertex a = 0; a + 2 * k_ + 1 < ef_.n(); ++a) {
      u_.assign(1, a);
      expand_u(higher_[a]);
    }
  }

 private:
  void expand_u(const std::vector<Vertex>& candidates) {
    if (u_.size() == k_ + 1) {
      visit_u();
      return;
    }
    std::vector<Vertex> next;
    const std::size_t remaining = k_ - u_.size();
    for (Vertex w : candidates) {
      // max(U) >= w + remaining, and V needs k+1 vertices above max(U)
      if (w + remaining + k_ + 1 >= ef_.n()) break;
      next.clear();
      std::set_intersection(candidates.begin(), candidates.end(), higher_[w].begin(), higher_[w].end(),
                            std::back_inserter(next));
      u_.push_back(w);
      expand_u(next);
      u_.pop_back();
    }
  }

  void visit_u() {
    const Vertex top = u_.back();
    // Common neighbours of U at p2 outside U. Condition (3) requires all of
    // them to lie in V, hence above max(U), and there are only k+1 slots.
    common_.clear();
    for (Vertex w = 0; w < ef_.n(); ++w) {
      if (std::find(u_.begin(), u_.end(), w) != u_.end()) continue;
      bool common = true;
      for (Vertex u : u_)
        if (!(ef_.weight(u, w) <= p2_)) {
          common = false;
          break;
        }
      if (!common) continue;
      if (w <= top || common_.size() == k_ + 1) return;
      common_.push_back(w);
    }
    // candidates for v_i: above max(U), joined at p1 to every u_j with j != i,
    // and not joined to u_i at p2
    slot_candidates_.assign(k_ + 1, {});
    for (Vertex w = top + 1; w < ef_.n(); ++w)
      for (std::size_t i = 0; i <= k_; ++i) {
        bool ok = ef_.weight(u_[i], w) > p2_;
        for (std::size_t j = 0; j <= k_ && ok; ++j)
          if (j != i) ok = ef_.weight(u_[j], w) <= p1_;
        if (ok) slot_candidates_[i].push_back(w);
      }
    for (const auto& c : slot_candidates_)
      if (c.empty()) return;
    v_.clear();
    expand_v();
  }

  void expand_v() {
    const std::size_t slot = v_.size();
    if (slot == k_ + 1) {
      for (Vertex c : common_)
        if (std::find(v_.begin(), v_.end(), c) == v_.end()) return;
      ++out_.count;
      if (collect_) {
        SpecialCycleWitness w;
        w.u = u_;
        w.v = v_;
        w.p1 = p1_;
        w.p2 = p2_;
        out_.witnesses.push_back(std::move(w));
      }
      return;
    }
    for (Vertex w : slot_candidates_[slot]) {
      if (slot > 0 && w <= v_.back()) continue;
      bool ok = true;
      for (Vertex prev : v_)
        if (!(ef_.weight(prev, w) <= p1_)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      v_.push_back(w);
      expand_v();
      v_.pop_back();
    }
  }

  const EdgeFiltration& ef_;
  std::uint32_t k_;
  double p1_, p2_;
  SpecialCycleCount& out_;
  bool collect_;
  std::vector<std::vector<Vertex>> higher_;
  std::vector<Vertex> u_, v_, common_;
  std::vector<std::vector<Vertex>> slot_candidates_;
};

}  // namespace

SpecialCycleCount count_special_cycles(const EdgeFiltration& ef, std::uint32_t k, double p1, double p2,
                                       bool collect_witnesses) {
  check_query(k, p1, p2);
  SpecialCycleCount result{k, p1, p2, 0, {}};
  if (ef.n() < 2 * k + 2) return result;
  SpecialCycleSearch(ef, k, p1, p2, result, collect_witnesses).run();
  return result;
}

SpecialCycleCount count_special_cycles_brute_force(const EdgeFiltration& ef, std::uint32_t k, double p1,
                                                   double p2, bool collect_witnesses) {
  check_query(k, p1, p2);
  if (ef.n() > 30) invalid_parameter("brute-force special cycle count is limited to n <= 30");
  SpecialCycleCount result{k, p1, p2, 0, {}};
  const std::uint32_t size = 2 * k + 2;
  const std::uint32_t n = ef.n();
  if (n < size) return result;

  // lexicographic walk over all `size`-subsets of [n]
  std::vector<Vertex> y(size);
  for (std::uint32_t i = 0; i < size; ++i) y[i] = i;
  while (true) {
    if (is_special(ef, y, k, p1, p2)) {
      ++result.count;
      if (collect_witnesses) result.witnesses.push_back(make_witness(y, k, p1, p2));
    }
    std::int64_t i = size - 1;
    while (i >= 0 && y[static_cast<std::size_t>(i)] == n - size + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++y[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < size; ++j) y[j] = y[j - 1] + 1;
  }
  return result;
}

std::optional<std::string> check_witness(const EdgeFiltration& ef, const SpecialCycleWitness& w) {
  const std::size_t half = w.u.size();
  if (half < 2 || w.v.size() != half) return "U and V must both have k+1 >= 2 vertices";
  const auto y = w.vertex_set();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= ef.n()) return "vertex out of range";
    if (i > 0 && y[i - 1] >= y[i]) return "Y must be strictly increasing with max(U) < min(V)";
  }
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b) {
      const double weight = ef.weight(y[a], y[b]);
      const bool antipodal = a < half && b == a + half;
      const std::string edge = std::to_string(y[a] + 1) + "-" + std::to_string(y[b] + 1);
      if (antipodal && !(weight > w.p2)) return "condition (2) fails on antipodal pair " + edge;
      if (!antipodal && !(weight <= w.p1)) return "condition (1) fails on edge " + edge;
    }
  // stronger than condition (3): no common neighbour of U anywhere, so U is a
  // maximal face at p2
  for (Vertex x = 0; x < ef.n(); ++x) {
    if (std::find(w.u.begin(), w.u.end(), x) != w.u.end()) continue;
    bool common = true;
    for (Vertex u : w.u) common = common && ef.weight(u, x) <= w.p2;
    if (common) return "vertex " + std::to_string(x + 1) + " is a common neighbour of U at p2";
  }
  return std::nullopt;
}

double expected_special_cycles(std::uint32_t n, std::uint32_t k, double p1, double p2) {
  if (k < 1) invalid_parameter("special cycles need k >= 1");
  if (!(p1 >= 0.0 && p1 <= p2 && p2 <= 1.0)) invalid_parameter("expected count needs 0 <= p1 <= p2 <= 1");
  const std::uint32_t size = 2 * k + 2;
  if (n < size || p1 == 0.0 || p2 == 1.0) return 0.0;

  // log C(n, size), Kahan-summed
  double log_choose = 0.0, carry = 0.0;
  for (std::uint32_t i = 0; i < size; ++i) {
    const double term = std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1)) - carry;
    const double sum = log_choose + term;
    carry = (sum - log_choose) - term;
    log_choose = sum;
  }
  const double kk = k;
  const double log_value = log_choose + 2.0 * kk * (kk + 1.0) * std::log(p1) + (kk + 1.0) * std::log1p(-p2) +
                           static_cast<double>(n - size) * std::log1p(-std::pow(p2, kk + 1.0));
  return std::exp(log_value);
}

WitnessReport witness_implies_persistence(const EdgeFiltration& ef, std::uint32_t k, double p1, double p2,
                                          const PersistenceDiagram& dg) {
  if (p2 > dg.w_cap())
    throw Error(ErrorCode::CapInsufficient,
                "diagram cap " + format_double(dg.w_cap()) + " is below p2 = " + format_double(p2));
  WitnessReport report;
  const auto stats = max_persistence(dg, k);
  report.max_ratio = stats.max_ratio;
  report.rank = rank_invariant(dg, {k, p1, p2});
  const auto found = count_special_cycles(ef, k, p1, p2, true);
  report.special_cycles = found.count;
  if (found.count == 0) {
    report.message = "no special cycle; nothing to check";
    return report;
  }
  const double needed = p2 / p1;
  if (report.rank < 1 || !report.max_ratio || *report.max_ratio < needed) {
    report.passed = false;
    report.violation = found.witnesses.front();
    report.message = "special cycle present but rank = " + std::to_string(report.rank) + ", M_k = " +
                     (report.max_ratio ? format_double(*report.max_ratio) : std::string("none")) +
                     " < p2/p1 = " + format_double(needed);
    return report;
  }
  for (const auto& w : found.witnesses)
    if (auto problem = check_witness(ef, w)) {
      report.passed = false;
      report.violation = w;
      report.message = "unsound witness: " + *problem;
      return report;
    }
  report.message = "rank " + std::to_string(report.rank) + ", M_k = " + format_double(*report.max_ratio) +
                   " >= p2/p1 = " + format_double(needed);
  return report;
}

}  // namespace rcf
