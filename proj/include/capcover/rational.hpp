#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace capcover {

/// Exact rational scalar used by every verifier and oracle.
using Rational = mpq_class;

/// Parses "3", "-2", "0.125", "1e-3", "7/4". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

/// Decimal rendering with `digits` fractional digits (rounded half away from zero).
std::string to_decimal(const Rational& r, int digits = 9);

inline double to_double(const Rational& r) { return r.get_d(); }

/// n/d in lowest terms; mpq_class(n, d) alone is not canonicalized.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Rounds `value` to 12 decimal digits and returns the exact rational of that decimal.
/// Floats leaving the LP are snapshotted this way so floors of them are reproducible.
Rational snapshot(double value, int digits = 12);

Rational floor(const Rational& r);
Rational ceil(const Rational& r);

/// Smallest power of two (possibly fractional) that is >= r. Requires r > 0.
Rational pow2_ceil(const Rational& r);

/// 2^k for any integer k.
Rational pow2(long k);

/// Largest j >= 0 with 2^j <= r, or -1 if r < 1. Exact, no floating log.
long floor_log2(const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace capcover
