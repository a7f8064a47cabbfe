#ifndef HYPERPACK_FEASIBILITY_HPP
#define HYPERPACK_FEASIBILITY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpack/geometry.hpp"
#include "hyperpack/rational.hpp"

namespace hyperpack {

// A size of the form value + eps*epsilon for a symbolic infinitesimal
// epsilon > 0. eps = 1 models "strictly larger than value", which is how the
// analysis asks about items just above an interval boundary.
struct EpsSize {
  Rat value;
  int eps = 0;
};

inline EpsSize exact_size(Rat v) { return {std::move(v), 0}; }
inline EpsSize strict_size(Rat v) { return {std::move(v), 1}; }

struct FeasibleSetQuery {
  std::vector<EpsSize> sizes;
  int dim = 2;
};

enum class Verdict { kFeasible, kInfeasible, kUnknown };

struct OracleConfig {
  std::size_t max_items = 30;
  std::uint64_t node_budget = 50'000'000;
  std::size_t max_coords_per_axis = 4096;
};

struct PackingWitness {
  // Parallel arrays, in the oracle's (descending-size) order. Anchor
  // coordinates drop the epsilon part; they are valid in the limit.
  std::vector<EpsSize> sizes;
  std::vector<std::vector<Rat>> anchors;
};

struct OracleResult {
  Verdict verdict = Verdict::kUnknown;
  std::uint64_t nodes = 0;
  std::string note;
  std::optional<PackingWitness> witness;
};

namespace detail {

// Scaled length: v/scale + e*epsilon. Total order is lexicographic, exact for
// an arbitrarily small positive epsilon because all compared quantities are
// sums of item sizes (bounded eps counts, rational parts on a common grid).
struct Len {
  std::int64_t v = 0;
  std::int32_t e = 0;
  friend bool operator<(const Len& a, const Len& b) {
    return a.v != b.v ? a.v < b.v : a.e < b.e;
  }
  friend bool operator==(const Len& a, const Len& b) { return a.v == b.v && a.e == b.e; }
  friend bool operator<=(const Len& a, const Len& b) { return a < b || a == b; }
  friend Len operator+(const Len& a, const Len& b) { return {a.v + b.v, a.e + b.e}; }
};

class FeasibilitySearch {
 public:
  FeasibilitySearch(const FeasibleSetQuery& q, const OracleConfig& cfg) : q_(q), cfg_(cfg) {}

  OracleResult run() {
    OracleResult res;
    const int d = q_.dim;
    if (d < 1) throw std::invalid_argument("feasible: dimension must be >= 1");
    for (const auto& s : q_.sizes) {
      if (s.value <= 0 && s.eps == 0) throw std::invalid_argument("feasible: nonpositive size");
      if (s.value > 1 || (s.value == 1 && s.eps > 0)) {
        res.verdict = Verdict::kInfeasible;
        res.note = "item larger than the bin";
        return res;
      }
    }
    if (q_.sizes.empty()) {
      res.verdict = Verdict::kFeasible;
      res.witness = PackingWitness{};
      return res;
    }
    if (q_.sizes.size() > cfg_.max_items) {
      res.verdict = Verdict::kUnknown;
      res.note = "cap: item count exceeds configured maximum";
      return res;
    }

    // Exact volume bound. (value+eps)^d > value^d, so equality plus any eps
    // is already over the bin volume.
    Rat vol = 0;
    bool any_eps = false;
    for (const auto& s : q_.sizes) {
      vol += rat_pow(s.value, d);
      any_eps = any_eps || s.eps > 0;
    }
    if (vol > 1 || (vol == 1 && any_eps)) {
      res.verdict = Verdict::kInfeasible;
      res.note = "volume bound";
      return res;
    }

    if (!scale_sizes()) {
      res.verdict = Verdict::kUnknown;
      res.note = "cap: common denominator too large for exact scaling";
      return res;
    }
    std::sort(sizes_.begin(), sizes_.end(), [](const Len& a, const Len& b) { return b < a; });
    if (!build_coords()) {
      res.verdict = Verdict::kUnknown;
      res.note = "cap: candidate coordinate set too large";
      return res;
    }

    pos_.assign(sizes_.size(), std::vector<Len>(d));
    budget_exhausted_ = false;
    bool found = dfs(0);
    res.nodes = nodes_;
    if (found) {
      res.verdict = Verdict::kFeasible;
      PackingWitness w;
      for (std::size_t i = 0; i < sizes_.size(); ++i) {
        w.sizes.push_back({Rat(sizes_[i].v, scale_), sizes_[i].e});
        std::vector<Rat> a;
        for (int ax = 0; ax < d; ++ax) a.push_back(Rat(pos_[i][ax].v, scale_));
        w.anchors.push_back(std::move(a));
      }
      res.witness = std::move(w);
    } else if (budget_exhausted_) {
      res.verdict = Verdict::kUnknown;
      res.note = "cap: node budget exhausted";
    } else {
      res.verdict = Verdict::kInfeasible;
    }
    return res;
  }

 private:
  bool scale_sizes() {
    BigInt lcm = 1;
    for (const auto& s : q_.sizes) {
      BigInt den = rat_den(s.value);
      lcm = boost::multiprecision::lcm(lcm, den);
      if (lcm > BigInt(1) << 40) return false;
    }
    // Headroom: coordinates are sums of at most n sizes.
    BigInt worst = lcm * BigInt(static_cast<unsigned>(q_.sizes.size()) + 2);
    if (worst > BigInt(1) << 60) return false;
    scale_ = lcm.convert_to<std::int64_t>();
    for (const auto& s : q_.sizes) {
      BigInt scaled = rat_num(s.value) * (lcm / rat_den(s.value));
      sizes_.push_back({scaled.convert_to<std::int64_t>(), s.eps});
    }
    return true;
  }

  // Candidate anchor coordinates: subset sums of the item sizes ("normal
  // patterns"). Any feasible packing can be normalized by pushing every item
  // toward the origin until each coordinate is 0 or flush against another
  // item's far face, which makes every coordinate such a sum. Searching this
  // superset is therefore complete.
  bool build_coords() {
    std::set<Len> sums{{0, 0}};
    for (const auto& s : sizes_) {
      std::set<Len> next = sums;
      for (const auto& base : sums) {
        Len c = base + s;
        if (c.v < scale_) next.insert(c);
        if (next.size() > cfg_.max_coords_per_axis) return false;
      }
      sums.swap(next);
    }
    coords_.assign(sums.begin(), sums.end());
    return true;
  }

  bool fits(const Len& p, const Len& s) const {
    Len hi = p + s;
    return hi.v < scale_ || (hi.v == scale_ && hi.e <= 0);
  }

  bool overlaps_placed(std::size_t k, const std::vector<Len>& p) const {
    for (std::size_t j = 0; j < k; ++j) {
      bool separated = false;
      for (int ax = 0; ax < q_.dim && !separated; ++ax) {
        separated = (pos_[j][ax] + sizes_[j]) <= p[ax] || (p[ax] + sizes_[k]) <= pos_[j][ax];
      }
      if (!separated) return false;
    }
    return true;
  }

  // Enumerates positions for item k in ascending lexicographic order.
  bool dfs(std::size_t k) {
    if (k == sizes_.size()) return true;
    const int d = q_.dim;
    const Len s = sizes_[k];
    const bool same_as_prev = k > 0 && sizes_[k - 1] == s;

    std::vector<std::size_t> idx(d, 0);
    std::vector<Len> p(d);
    // Iterative odometer over coords_^d.
    int ax = 0;
    while (true) {
      if (ax == d) {
        if (++nodes_ > cfg_.node_budget) {
          budget_exhausted_ = true;
          return false;
        }
        bool ok = true;
        if (same_as_prev && !(lex_less(pos_[k - 1], p))) ok = false;
        if (ok && overlaps_placed(k, p)) {
          pos_[k] = p;
          if (dfs(k + 1)) return true;
          if (budget_exhausted_) return false;
        }
        --ax;
        ++idx[ax];
        continue;
      }
      if (idx[ax] >= coords_.size()) {
        idx[ax] = 0;
        if (ax == 0) return false;
        --ax;
        ++idx[ax];
        continue;
      }
      p[ax] = coords_[idx[ax]];
      if (!fits(p[ax], s)) {  // coords_ ascending: larger ones fail too
        idx[ax] = 0;
        if (ax == 0) return false;
        --ax;
        ++idx[ax];
        continue;
      }
      // Mirror symmetry: the first item may be confined to the low orthant.
      if (k == 0) {
        Len dbl{2 * p[ax].v + s.v, 2 * p[ax].e + s.e};
        if (!(dbl.v < scale_ || (dbl.v == scale_ && dbl.e <= 0))) {
          idx[ax] = 0;
          if (ax == 0) return false;
          --ax;
          ++idx[ax];
          continue;
        }
      }
      ++ax;
    }
  }

  static bool lex_less(const std::vector<Len>& a, const std::vector<Len>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  }

  const FeasibleSetQuery& q_;
  const OracleConfig& cfg_;
  std::int64_t scale_ = 1;
  std::vector<Len> sizes_;
  std::vector<Len> coords_;
  std::vector<std::vector<Len>> pos_;
  std::uint64_t nodes_ = 0;
  bool budget_exhausted_ = false;
};

}  // namespace detail

inline OracleResult check_feasible(const FeasibleSetQuery& q, const OracleConfig& cfg = {}) {
  detail::FeasibilitySearch search(q, cfg);
  return search.run();
}

// Convenience for callers that require a definite answer.
inline bool is_feasible(const FeasibleSetQuery& q, const OracleConfig& cfg = {}) {
  OracleResult r = check_feasible(q, cfg);
  if (r.verdict == Verdict::kUnknown) throw std::runtime_error("feasible: " + r.note);
  return r.verdict == Verdict::kFeasible;
}

}  // namespace hyperpack

#endif  // HYPERPACK_FEASIBILITY_HPP
