#ifndef HYPERPACK_BOUNDS_HPP
#define HYPERPACK_BOUNDS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpack/feasibility.hpp"
#include "hyperpack/weights.hpp"

namespace hyperpack {

struct SearchConfig {
  OracleConfig oracle;
  Rat critical_threshold = Rat(1, 4);  // enumerate types with t_{i+1} >= this
};

using CountVector = std::vector<long long>;  // [1..critical_max], index 0 unused

struct CaseBoundResult {
  int case_index = 0;
  Rat value;
  std::map<int, long long> witness;  // nonzero counts by type
  bool certified = true;             // no oracle refusal influenced the result
  std::string note;
  std::uint64_t candidates = 0;
  std::uint64_t oracle_calls = 0;
  int first_fluid_type = 0;
};

struct BoundResult {
  std::vector<CaseBoundResult> cases;
  Rat P;
  int p_case = 0;
  std::map<int, long long> p_witness;
  bool certified = true;
};

// min over subcases of  sum_i m_i W(i)  +  dens * (1 - sum_i m_i t_{i+1}^d).
// Types >= first_fluid_type are charged as fluid volume at the subcase's
// density ceiling; every type with a count in m must lie below it.
inline Rat value_of_counts(const WeightingSystem& ws, int case_index,
                           const std::map<int, long long>& m, int first_fluid_type) {
  const auto& p = ws.params();
  const CaseSpec* cs = nullptr;
  for (const auto& c : ws.cases())
    if (c.index == case_index) cs = &c;
  if (!cs) throw std::invalid_argument("value_of_counts: no such case");
  for (const auto& [ty, cnt] : m) {
    if (ty < 1 || ty >= first_fluid_type) throw std::invalid_argument("value_of_counts: count on fluid type");
    if (cnt < 0) throw std::invalid_argument("value_of_counts: negative count");
  }
  bool first = true;
  Rat best;
  for (const auto& sub : cs->subcases) {
    Rat dens = ws.fluid_density(case_index, sub.subcase_index, first_fluid_type);
    Rat total = 0, vol = 0;
    for (const auto& [ty, cnt] : m) {
      total += Rat(cnt) * ws.type_weight(case_index, sub.subcase_index, ty);
      vol += Rat(cnt) * rat_pow(p.t[ty + 1], p.d);
    }
    total += dens * (Rat(1) - vol);
    if (first || total < best) {
      best = total;
      first = false;
    }
  }
  return best;
}

namespace detail {

// Monotone feasibility cache over count vectors: a superset of an infeasible
// multiset is infeasible, a subset of a feasible one is feasible.
class CountCache {
 public:
  Verdict lookup(const CountVector& m) const {
    for (const auto& f : feasible_)
      if (leq(m, f)) return Verdict::kFeasible;
    for (const auto& g : infeasible_)
      if (leq(g, m)) return Verdict::kInfeasible;
    return Verdict::kUnknown;
  }
  void store(const CountVector& m, Verdict v) {
    if (v == Verdict::kFeasible) feasible_.push_back(m);
    else if (v == Verdict::kInfeasible) infeasible_.push_back(m);
  }

 private:
  static bool leq(const CountVector& a, const CountVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  std::vector<CountVector> feasible_, infeasible_;
};

struct CandidateSpace {
  int critical_max = 0;  // enumerated types are 1..critical_max
  std::vector<int> enumerated;
  std::vector<long long> cap;             // per-type count cap
  std::vector<std::vector<long long>> filter_coeff;  // per filter row, per type
  std::vector<long long> filter_limit;
  std::vector<Rat> vol;  // t_{i+1}^d
};

}  // namespace detail

// State shared across the per-case searches of one overall_bound run.
class BoundSearch {
 public:
  BoundSearch(const ParameterInstance& p, SearchConfig cfg = {})
      : ws_(WeightingSystem::build(p)), cfg_(std::move(cfg)) {
    const auto& par = ws_.params();
    critical_max_ = 0;
    for (int i = 1; i <= par.N; ++i)
      if (par.t[i + 1] >= cfg_.critical_threshold) critical_max_ = i;
    if (critical_max_ == 0)
      throw std::invalid_argument("BoundSearch: critical threshold excludes every type");
  }

  const WeightingSystem& system() const { return ws_; }
  int critical_max() const { return critical_max_; }
  int first_fluid_type() const { return critical_max_ + 1; }

  CaseBoundResult case_bound(int case_index) {
    const auto& p = ws_.params();
    const CaseSpec* cs = nullptr;
    for (const auto& c : ws_.cases())
      if (c.index == case_index) cs = &c;
    if (!cs) throw std::invalid_argument("case_bound: no such case");

    CaseBoundResult res;
    res.case_index = case_index;
    res.first_fluid_type = first_fluid_type();

    // Per-subcase fluid densities; types whose density ceilings never exceed
    // them can be left to the fluid term (their count can only lower the
    // objective), which keeps the enumeration small.
    std::vector<Rat> dens;
    for (const auto& sub : cs->subcases)
      dens.push_back(ws_.fluid_density(case_index, sub.subcase_index, first_fluid_type()));

    detail::CandidateSpace space;
    space.critical_max = critical_max_;
    for (int i = 1; i <= critical_max_; ++i) {
      bool useful = false;
      for (std::size_t s = 0; s < cs->subcases.size() && !useful; ++s)
        useful = ws_.peak_efficiency(case_index, cs->subcases[s].subcase_index, i) > dens[s];
      if (useful) space.enumerated.push_back(i);
    }

    // Grid-point pigeonhole: an item of size > c/q contains c interior grid
    // points per axis of the (q-1)^d lattice {1/q,...,(q-1)/q}^d, so
    // sum m_i * floor(t_{i+1} q)^d <= (q-1)^d for every q.
    space.cap.assign(critical_max_ + 1, 0);
    space.vol.assign(critical_max_ + 1, Rat(0));
    for (int i : space.enumerated) {
      long long per_axis = rat_ceil(Rat(1) / p.t[i + 1]).convert_to<long long>() - 1;
      space.cap[i] = ipow(per_axis, p.d);
      space.vol[i] = rat_pow(p.t[i + 1], p.d);
    }
    for (int q = 2; q <= p.M; ++q) {
      std::vector<long long> coeff(critical_max_ + 1, 0);
      bool any = false;
      for (int i : space.enumerated) {
        long long c = rat_floor_ll(p.t[i + 1] * q);
        coeff[i] = ipow(c, p.d);
        any = any || c > 0;
      }
      if (!any) continue;
      space.filter_coeff.push_back(std::move(coeff));
      space.filter_limit.push_back(ipow(q - 1, p.d));
    }

    // Enumerate candidate vectors, then walk them in decreasing value order;
    // the first oracle-feasible one is the case maximum.
    struct Candidate {
      Rat value;
      CountVector m;
    };
    std::vector<Candidate> cands;
    CountVector m(critical_max_ + 1, 0);
    std::vector<long long> filter_acc(space.filter_limit.size(), 0);
    Rat vol_acc = 0;

    auto value_of = [&](const CountVector& mv) {
      bool first = true;
      Rat best;
      for (std::size_t s = 0; s < cs->subcases.size(); ++s) {
        Rat total = 0, vol = 0;
        for (int i : space.enumerated) {
          if (mv[i] == 0) continue;
          total += Rat(mv[i]) * ws_.type_weight(case_index, cs->subcases[s].subcase_index, i);
          vol += Rat(mv[i]) * space.vol[i];
        }
        total += dens[s] * (Rat(1) - vol);
        if (first || total < best) {
          best = total;
          first = false;
        }
      }
      return best;
    };

    auto enumerate = [&](auto&& self, std::size_t pos) -> void {
      if (pos == space.enumerated.size()) {
        cands.push_back({value_of(m), m});
        return;
      }
      const int ty = space.enumerated[pos];
      long long applied = 0;
      for (long long c = 0; c <= space.cap[ty]; ++c) {
        if (c > 0) {
          vol_acc += space.vol[ty];
          for (std::size_t f = 0; f < filter_acc.size(); ++f)
            filter_acc[f] += space.filter_coeff[f][ty];
          ++applied;
          bool ok = vol_acc < 1;
          for (std::size_t f = 0; f < filter_acc.size() && ok; ++f)
            ok = filter_acc[f] <= space.filter_limit[f];
          if (!ok) break;
        }
        m[ty] = c;
        self(self, pos + 1);
      }
      vol_acc -= Rat(applied) * space.vol[ty];
      for (std::size_t f = 0; f < filter_acc.size(); ++f)
        filter_acc[f] -= applied * space.filter_coeff[f][ty];
      m[ty] = 0;
    };
    enumerate(enumerate, 0);
    res.candidates = cands.size();

    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.value != b.value) return b.value < a.value;
      return b.m < a.m;  // deterministic tie-break
    });

    for (const auto& cand : cands) {
      Verdict v = cache_.lookup(cand.m);
      if (v == Verdict::kUnknown) {
        FeasibleSetQuery q;
        q.dim = p.d;
        for (int i = 1; i <= critical_max_; ++i)
          for (long long c = 0; c < cand.m[i]; ++c) q.sizes.push_back(strict_size(p.t[i + 1]));
        OracleResult orc = check_feasible(q, cfg_.oracle);
        ++res.oracle_calls;
        v = orc.verdict;
        if (v == Verdict::kUnknown) {
          // Refusal: treat as feasible so the bound stays an upper bound,
          // but the result is no longer a certificate.
          res.certified = false;
          res.note = "oracle refusal on a candidate: " + orc.note;
          v = Verdict::kFeasible;
        } else {
          cache_.store(cand.m, v);
        }
      }
      if (v == Verdict::kFeasible) {
        res.value = cand.value;
        for (int i = 1; i <= critical_max_; ++i)
          if (cand.m[i] > 0) res.witness[i] = cand.m[i];
        return res;
      }
    }
    throw std::logic_error("case_bound: even the empty set was rejected");
  }

  BoundResult overall() {
    BoundResult out;
    bool first = true;
    for (const auto& c : ws_.cases()) {
      CaseBoundResult cb = case_bound(c.index);
      out.certified = out.certified && cb.certified;
      if (first || cb.value > out.P) {
        out.P = cb.value;
        out.p_case = cb.case_index;
        out.p_witness = cb.witness;
        first = false;
      }
      out.cases.push_back(std::move(cb));
    }
    return out;
  }

 private:
  WeightingSystem ws_;
  SearchConfig cfg_;
  int critical_max_ = 0;
  detail::CountCache cache_;
};

inline BoundResult overall_bound(const ParameterInstance& p, const SearchConfig& cfg = {}) {
  BoundSearch search(p, cfg);
  return search.overall();
}

}  // namespace hyperpack

#endif  // HYPERPACK_BOUNDS_HPP
