#ifndef HYPERPACK_RATIONAL_HPP
#define HYPERPACK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperpack {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

// floor(r) as a big integer; works for negative values too.
inline BigInt rat_floor(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt rat_ceil(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r > 0 && q * denominator(r) != numerator(r)) ++q;
  return q;
}

// floor(r) for values known to fit in a machine integer.
inline long long rat_floor_ll(const Rat& r) {
  return rat_floor(r).convert_to<long long>();
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_pow(const Rat& base, int exp) {
  if (exp < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rat acc = 1;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
  if (x != x) throw std::invalid_argument("rat_from_double: NaN");
  Rat r;
  int sign = x < 0 ? -1 : 1;
  x = x < 0 ? -x : x;
  BigInt scaled = 0;
  BigInt denom = 1;
  while (x != static_cast<double>(static_cast<long long>(x)) || x > 9e15) {
    if (x > 9e15) {  // large magnitudes are integral already
      break;
    }
    x *= 2;
    denom <<= 1;
    if (denom > (BigInt(1) << 1100)) throw std::invalid_argument("rat_from_double: not finite");
  }
  scaled = BigInt(static_cast<long long>(x));
  r = Rat(scaled, denom);
  return sign < 0 ? Rat(-r) : r;
}

// Parses "3", "-2", "7/10", "0.25", "1/3". Decimal strings convert exactly.
inline Rat parse_rat(std::string_view s) {
  auto bad = [&] { return std::invalid_argument("parse_rat: cannot parse '" + std::string(s) + "'"); };
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (b == e) throw bad();
  std::string body(s.substr(b, e - b));

  bool neg = false;
  size_t i = 0;
  if (body[i] == '+' || body[i] == '-') {
    neg = body[i] == '-';
    ++i;
  }
  auto digits_ok = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };

  Rat value;
  auto slash = body.find('/', i);
  if (slash != std::string::npos) {
    std::string ns = body.substr(i, slash - i), ds = body.substr(slash + 1);
    if (!digits_ok(ns) || !digits_ok(ds)) throw bad();
    BigInt n(ns), d(ds);
    if (d == 0) throw bad();
    value = Rat(n, d);
  } else {
    auto dot = body.find('.', i);
    if (dot == std::string::npos) {
      std::string ns = body.substr(i);
      if (!digits_ok(ns)) throw bad();
      value = Rat(BigInt(ns));
    } else {
      std::string ip = body.substr(i, dot - i), fp = body.substr(dot + 1);
      if (ip.empty() && fp.empty()) throw bad();
      if (!ip.empty() && !digits_ok(ip)) throw bad();
      if (!fp.empty() && !digits_ok(fp)) throw bad();
      BigInt n = ip.empty() ? BigInt(0) : BigInt(ip);
      BigInt d = 1;
      for (char c : fp) {
        n = n * 10 + (c - '0');
        d *= 10;
      }
      value = Rat(n, d);
    }
  }
  return neg ? Rat(-value) : value;
}

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

// Fixed-point decimal rendering, truncated toward zero at `digits` places.
inline std::string rat_to_decimal(const Rat& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt v = (numerator(r) * scale) / denominator(r);
  bool neg = v < 0;
  if (neg) v = -v;
  std::ostringstream os;
  os << v;
  std::string t = os.str();
  if (static_cast<int>(t.size()) <= digits) t.insert(0, digits + 1 - t.size(), '0');
  t.insert(t.size() - digits, ".");
  if (digits == 0) t.pop_back();
  return (neg ? "-" : "") + t;
}

}  // namespace hyperpack

#endif  // HYPERPACK_RATIONAL_HPP
