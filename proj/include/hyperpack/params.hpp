#ifndef HYPERPACK_PARAMS_HPP
#define HYPERPACK_PARAMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperpack/rational.hpp"

namespace hyperpack {

// Parameter schema of the online algorithm: interval boundaries t, red
// fractions alpha, reserved-space quanta Delta, and the reservation map phi.
// All vectors are 1-indexed (index 0 unused) to match the type indices.
struct ParameterInstance {
  int d = 2;       // dimension
  int M = 11;      // small-item threshold denominator: small <=> size <= 1/M
  int N = 16;      // number of large types; N+1 is the small type index
  int K = 4;       // number of Delta values
  std::vector<Rat> t;      // t[1..N+1], t[1] = 1 > ... > t[N+1] = 1/M
  std::vector<Rat> alpha;  // alpha[1..N] in [0,1]
  std::vector<Rat> Delta;  // Delta[1..K], increasing, < 1/2
  std::vector<int> phi;    // phi[1..N] in {0..K}

  int small_type() const { return N + 1; }
  // Infimum of the type-i size interval (t_{i+1}, t_i]; for the small type
  // the interval is (0, 1/M].
  Rat interval_infimum(int i) const { return i <= N ? t[i + 1] : Rat(0); }
};

struct DerivedType {
  int index = 0;
  long long beta = 0;   // blue items per axis
  Rat delta;            // per-axis slack 1 - t_i*beta_i
  long long gamma = 0;  // red layers per axis (0 when the type is never red)
  long long theta = 0;  // red slots per bin: beta^d - (beta-gamma)^d
};

struct ParamViolation {
  std::string code;     // "t-schema" | "delta-schema" | "phi-range" | "phi-delta"
                        // | "alpha-range" | "alpha" | "unpairable-red"
  int type_index = 0;
  std::string detail;
};

inline long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// tau(s): unique j with s in (t_{j+1}, t_j]; N+1 for small items.
inline int type_of(const ParameterInstance& p, const Rat& size) {
  if (size <= 0 || size > 1) throw std::invalid_argument("type_of: size outside (0,1]");
  if (size <= p.t[p.N + 1]) return p.N + 1;
  for (int j = 1; j <= p.N; ++j) {
    if (size <= p.t[j] && size > p.t[j + 1]) return j;
  }
  throw std::logic_error("type_of: interval cover broken");
}

// Derived quantities per large type. gamma is zeroed for types that are never
// colored red (alpha_i = 0), matching the published parameter tables.
inline std::vector<DerivedType> derive(const ParameterInstance& p) {
  std::vector<DerivedType> out(p.N + 1);
  for (int i = 1; i <= p.N; ++i) {
    DerivedType dt;
    dt.index = i;
    dt.beta = rat_floor_ll(Rat(1) / p.t[i]);
    dt.delta = Rat(1) - p.t[i] * dt.beta;
    if (p.t[i] > p.Delta[p.K] || p.alpha[i] == 0) {
      dt.gamma = 0;
    } else {
      long long g = rat_floor_ll(p.Delta[1] / p.t[i]);
      dt.gamma = g < 1 ? 1 : g;
    }
    dt.theta = ipow(dt.beta, p.d) - ipow(dt.beta - dt.gamma, p.d);
    out[i] = dt;
  }
  return out;
}

// gamma_j * t_j <= Delta_{phi(i)}: red type j fits the space reserved by a
// type-i blue bin. Uses derived quantities, not any summary table.
inline bool admissible_pair(const ParameterInstance& p, const std::vector<DerivedType>& der,
                            int blue_type, int red_type) {
  if (p.phi[blue_type] == 0) return false;
  if (p.alpha[red_type] == 0) return false;
  return Rat(der[red_type].gamma) * p.t[red_type] <= p.Delta[p.phi[blue_type]];
}

inline std::vector<ParamViolation> validate(const ParameterInstance& p) {
  std::vector<ParamViolation> out;
  auto push = [&](std::string code, int idx, std::string detail) {
    out.push_back({std::move(code), idx, std::move(detail)});
  };

  if (p.d < 2) push("t-schema", 0, "dimension must be >= 2");
  if (static_cast<int>(p.t.size()) != p.N + 2 || static_cast<int>(p.alpha.size()) != p.N + 1 ||
      static_cast<int>(p.Delta.size()) != p.K + 1 || static_cast<int>(p.phi.size()) != p.N + 1) {
    push("t-schema", 0, "vector lengths do not match N/K");
    return out;
  }
  if (p.t[1] != 1) push("t-schema", 1, "t_1 must be 1");
  if (p.t[p.N + 1] != Rat(1, p.M)) push("t-schema", p.N + 1, "t_{N+1} must be 1/M");
  for (int i = 1; i <= p.N; ++i) {
    if (!(p.t[i] > p.t[i + 1])) push("t-schema", i, "t must be strictly decreasing");
  }
  for (int k = 1; k <= p.K; ++k) {
    if (!(p.Delta[k] > 0) || !(p.Delta[k] < Rat(1, 2)))
      push("delta-schema", k, "Delta_k must lie in (0, 1/2)");
    if (k > 1 && !(p.Delta[k] > p.Delta[k - 1]))
      push("delta-schema", k, "Delta must be strictly increasing");
  }

  // The remaining checks need derived quantities even if the schema is bent,
  // so guard against undefined floor(1/t).
  bool t_ok = true;
  for (int i = 1; i <= p.N + 1 && t_ok; ++i) t_ok = p.t[i] > 0;
  if (!t_ok) return out;
  auto der = derive(p);

  for (int i = 1; i <= p.N; ++i) {
    if (p.phi[i] < 0 || p.phi[i] > p.K) {
      push("phi-range", i, "phi out of {0..K}");
      continue;
    }
    if (p.phi[i] != 0 && !(p.Delta[p.phi[i]] <= der[i].delta))
      push("phi-delta", i, "Delta_{phi(i)} exceeds delta_i");
    if (p.alpha[i] < 0 || p.alpha[i] > 1) push("alpha-range", i, "alpha outside [0,1]");
    if (p.t[i] > p.Delta[p.K] && p.alpha[i] != 0)
      push("alpha", i, "alpha must be 0 when t_i > Delta_K");
  }

  // Every red type must have at least one blue partner group.
  for (int j = 1; j <= p.N; ++j) {
    if (p.alpha[j] <= 0 || p.alpha[j] > 1) continue;
    bool paired = false;
    for (int i = 1; i <= p.N && !paired; ++i) paired = admissible_pair(p, der, i, j);
    if (!paired) push("unpairable-red", j, "no bin group can accept this red type");
  }
  return out;
}

// The published instances: M=11, 16 large types, K=4, with alpha chosen per
// dimension (square vs cube packing).
inline ParameterInstance builtin(int d) {
  if (d != 2 && d != 3) throw std::invalid_argument("builtin: only d=2 and d=3 are shipped");
  ParameterInstance p;
  p.d = d;
  p.M = 11;
  p.N = 16;
  p.K = 4;
  const char* ts[] = {"1",   "0.7", "0.65", "0.6", "0.5", "0.4", "0.35", "1/3", "0.3",
                      "1/4", "1/5", "1/6",  "1/7", "1/8", "1/9", "0.1",  "1/11"};
  p.t.assign(p.N + 2, Rat(0));
  for (int i = 1; i <= p.N + 1; ++i) p.t[i] = parse_rat(ts[i - 1]);
  p.Delta = {Rat(0), parse_rat("0.2"), parse_rat("0.3"), parse_rat("0.35"), parse_rat("0.4")};
  p.phi = {0, 0, 2, 3, 4, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  p.alpha.assign(p.N + 1, Rat(0));
  p.alpha[6] = parse_rat("0.12");
  p.alpha[7] = parse_rat("0.2");
  if (d == 2) {
    p.alpha[9] = parse_rat("0.2546");
    p.alpha[10] = parse_rat("0.2096");
    p.alpha[11] = parse_rat("0.15");
    for (int i = 12; i <= 15; ++i) p.alpha[i] = parse_rat("0.1");
    p.alpha[16] = parse_rat("0.05");
  } else {
    p.alpha[9] = parse_rat("0.325");
    p.alpha[10] = parse_rat("0.2096");
    p.alpha[11] = parse_rat("0.15");
  }
  return p;
}

// ---- parameter file format (JSON) ----

inline ParameterInstance params_from_json(const nlohmann::json& j) {
  ParameterInstance p;
  p.d = j.at("d").get<int>();
  p.M = j.at("M").get<int>();
  p.N = j.at("N").get<int>();
  p.K = j.at("K").get<int>();
  auto read_rats = [](const nlohmann::json& arr) {
    std::vector<Rat> v{Rat(0)};  // 1-indexed
    for (const auto& e : arr) {
      if (e.is_string()) v.push_back(parse_rat(e.get<std::string>()));
      else if (e.is_number_integer()) v.push_back(Rat(e.get<long long>()));
      else v.push_back(rat_from_double(e.get<double>()));
    }
    return v;
  };
  p.t = read_rats(j.at("t"));
  p.alpha = read_rats(j.at("alpha"));
  p.Delta = read_rats(j.at("Delta"));
  p.phi.assign(1, 0);
  for (const auto& e : j.at("phi")) p.phi.push_back(e.get<int>());
  if (static_cast<int>(p.t.size()) != p.N + 2)
    throw std::invalid_argument("params_from_json: t must have N+1 entries");
  if (static_cast<int>(p.alpha.size()) != p.N + 1)
    throw std::invalid_argument("params_from_json: alpha must have N entries");
  if (static_cast<int>(p.Delta.size()) != p.K + 1)
    throw std::invalid_argument("params_from_json: Delta must have K entries");
  if (static_cast<int>(p.phi.size()) != p.N + 1)
    throw std::invalid_argument("params_from_json: phi must have N entries");
  return p;
}

inline nlohmann::ordered_json params_to_json(const ParameterInstance& p) {
  nlohmann::ordered_json j;
  j["d"] = p.d;
  j["M"] = p.M;
  j["N"] = p.N;
  j["K"] = p.K;
  auto rats = [](const std::vector<Rat>& v) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(rat_to_string(v[i]));
    return out;
  };
  j["t"] = rats(p.t);
  j["alpha"] = rats(p.alpha);
  j["Delta"] = rats(p.Delta);
  j["phi"] = std::vector<int>(p.phi.begin() + 1, p.phi.end());
  return j;
}

}  // namespace hyperpack

#endif  // HYPERPACK_PARAMS_HPP
