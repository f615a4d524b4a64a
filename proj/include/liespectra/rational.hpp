#pragma once

// Exact arithmetic primitives shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liespectra {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical text form: "p/q" with q > 0 and gcd(p,q) = 1; integers print as "p".
inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

/// p/q in lowest terms. The two-argument mpq constructor does not reduce.
inline Rational ratio(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected so that
/// every accepted string denotes an exact value.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(first, last - first + 1);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return Integer(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace liespectra
