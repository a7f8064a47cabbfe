#ifndef HYPERPACK_WEIGHTS_HPP
#define HYPERPACK_WEIGHTS_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hyperpack/params.hpp"
#include "hyperpack/rational.hpp"

namespace hyperpack {

// Per-type charging rule inside one weighting function.
enum class WeightRule {
  kBlueOnly,     // (1-alpha)/beta^d
  kOneOverBeta,  // 1/beta^d
  kZero,
  kBonus,    // (1-alpha)/beta^d + alpha/theta
  kRedOnly,  // alpha/theta
};

struct SubcaseSpec {
  int case_index = 0;
  int subcase_index = 0;
  std::vector<WeightRule> rules;  // [1..N]
};

struct CaseSpec {
  int index = 0;
  int pivot = 0;        // smallest indeterminate-red type covered; 0 for case 1
  bool catch_all = false;
  std::vector<SubcaseSpec> subcases;
};

// The weighting system: one case with no indeterminate red bins, then one
// case per pivot red type at which the set of blue groups forced into
// bichromatic service grows. The last case is a catch-all for all larger
// pivot types.
class WeightingSystem {
 public:
  static WeightingSystem build(const ParameterInstance& p) {
    WeightingSystem ws;
    ws.p_ = p;
    ws.der_ = derive(p);

    const int N = p.N;
    auto zero_set = [&](int e) {
      std::vector<bool> z(N + 1, false);
      for (int i = 1; i <= N; ++i) z[i] = admissible_pair(p, ws.der_, i, e);
      return z;
    };
    auto grows = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
      // b strictly contains a
      bool super = true, strict = false;
      for (int i = 1; i <= N; ++i) {
        if (a[i] && !b[i]) super = false;
        if (b[i] && !a[i]) strict = true;
      }
      return super && strict;
    };

    std::vector<int> reds;
    for (int i = 1; i <= N; ++i)
      if (p.alpha[i] > 0) reds.push_back(i);

    std::vector<int> pivots;
    std::vector<bool> cur(N + 1, false);
    for (int e : reds) {
      auto z = zero_set(e);
      if (pivots.empty() || grows(cur, z)) {
        pivots.push_back(e);
        cur = z;
      }
    }
    if (static_cast<int>(pivots.size()) > 3) pivots.resize(3);

    // Case 1: no indeterminate red bins; every red is packed beside blues.
    CaseSpec c1;
    c1.index = 1;
    SubcaseSpec s11{1, 1, std::vector<WeightRule>(N + 1, WeightRule::kBlueOnly)};
    c1.subcases.push_back(std::move(s11));
    ws.cases_.push_back(std::move(c1));

    Rat red_extent_prev;  // gamma_e * t_e of the pivot, for coverage checks
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const int pivot = pivots[k];
      const bool last = k + 1 == pivots.size();
      const int range_end = last ? N + 1 : pivots[k + 1];
      const Rat pivot_extent = Rat(ws.der_[pivot].gamma) * p.t[pivot];
      // The subcase-1 accounting for this case must stay valid for every
      // state whose smallest indeterminate-red type lies in the range.
      for (int e : reds) {
        if (e < pivot || e >= range_end) continue;
        if (Rat(ws.der_[e].gamma) * p.t[e] > pivot_extent)
          throw std::invalid_argument(
              "WeightingSystem: red extents are not monotone across the case ranges; "
              "this parameter shape is unsupported");
      }
      if (last) {
        for (int e : reds) {
          if (e >= pivot && Rat(ws.der_[e].gamma) * p.t[e] > pivot_extent)
            throw std::invalid_argument("WeightingSystem: catch-all case does not cover all reds");
        }
      }

      CaseSpec c;
      c.index = static_cast<int>(ws.cases_.size()) + 1;
      c.pivot = pivot;
      c.catch_all = last;

      auto z = zero_set(pivot);
      SubcaseSpec s1{c.index, 1, std::vector<WeightRule>(N + 1, WeightRule::kBlueOnly)};
      for (int i = 1; i <= N; ++i) {
        if (z[i]) s1.rules[i] = p.alpha[i] > 0 ? WeightRule::kRedOnly : WeightRule::kZero;
        else s1.rules[i] = p.alpha[i] > 0 ? WeightRule::kBonus : WeightRule::kOneOverBeta;
      }
      c.subcases.push_back(std::move(s1));

      if (!last) {
        // Count the forced bichromatic bins as blue and charge the
        // indeterminate red groups of the covered range directly.
        SubcaseSpec s2{c.index, 2, std::vector<WeightRule>(N + 1, WeightRule::kBlueOnly)};
        for (int e : reds)
          if (e < range_end) s2.rules[e] = WeightRule::kBonus;
        c.subcases.push_back(std::move(s2));
      }
      ws.cases_.push_back(std::move(c));
      red_extent_prev = pivot_extent;
    }
    return ws;
  }

  const ParameterInstance& params() const { return p_; }
  const std::vector<DerivedType>& derived() const { return der_; }
  const std::vector<CaseSpec>& cases() const { return cases_; }

  const SubcaseSpec& subcase(int case_index, int subcase_index) const {
    for (const auto& c : cases_) {
      if (c.index != case_index) continue;
      for (const auto& s : c.subcases)
        if (s.subcase_index == subcase_index) return s;
    }
    throw std::invalid_argument("WeightingSystem: no such case/subcase");
  }

  // Weight of a large type 1..N.
  Rat type_weight(int case_index, int subcase_index, int type) const {
    const auto& s = subcase(case_index, subcase_index);
    if (type < 1 || type > p_.N) throw std::invalid_argument("type_weight: large types only");
    const auto& dt = der_[type];
    const Rat bd = Rat(ipow(dt.beta, p_.d));
    const Rat a = p_.alpha[type];
    switch (s.rules[type]) {
      case WeightRule::kBlueOnly:
        return (Rat(1) - a) / bd;
      case WeightRule::kOneOverBeta:
        return Rat(1) / bd;
      case WeightRule::kZero:
        return Rat(0);
      case WeightRule::kBonus:
        if (a == 0) return Rat(1) / bd;
        return (Rat(1) - a) / bd + a / Rat(dt.theta);
      case WeightRule::kRedOnly:
        return a == 0 ? Rat(0) : a / Rat(dt.theta);
    }
    throw std::logic_error("type_weight: unreachable");
  }

  // Small items are charged by volume at the sub-bin packing guarantee.
  Rat small_weight(const Rat& size) const {
    return rat_pow(size, p_.d) * small_density();
  }

  Rat small_density() const {
    return Rat(ipow(p_.M + 1, p_.d), ipow(p_.M, p_.d) - 1);
  }

  Rat weight(int case_index, int subcase_index, const Rat& size) const {
    const int ty = type_of(p_, size);
    if (ty == p_.small_type()) return small_weight(size);
    return type_weight(case_index, subcase_index, ty);
  }

  Rat efficiency(int case_index, int subcase_index, const Rat& size) const {
    return weight(case_index, subcase_index, size) / rat_pow(size, p_.d);
  }

  // Density ceiling for type `type`: its weight is constant on the interval,
  // so the density supremum sits at the interval infimum t_{type+1}.
  Rat peak_efficiency(int case_index, int subcase_index, int type) const {
    return type_weight(case_index, subcase_index, type) / rat_pow(p_.t[type + 1], p_.d);
  }

  // Maximum charging density over all types >= first_fluid_type plus the
  // small type; the "fluid" rate at which residual volume is charged.
  Rat fluid_density(int case_index, int subcase_index, int first_fluid_type) const {
    Rat best = small_density();
    for (int i = first_fluid_type; i <= p_.N; ++i)
      best = std::max(best, peak_efficiency(case_index, subcase_index, i));
    return best;
  }

 private:
  ParameterInstance p_;
  std::vector<DerivedType> der_;
  std::vector<CaseSpec> cases_;
};

}  // namespace hyperpack

#endif  // HYPERPACK_WEIGHTS_HPP
