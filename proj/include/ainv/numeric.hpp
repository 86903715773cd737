#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ainv {

/// Arbitrary precision integer. Constant-propagation values live here.
using Integer = mpz_class;

/// Exact rational, always kept in canonical form (reduced, positive
/// denominator) by GMP after every arithmetic operation.
using Rational = mpq_class;

/// A concrete program state: one value per variable.
using Point = std::vector<Rational>;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Point make_point(std::initializer_list<long> values) {
  Point p;
  p.reserve(values.size());
  for (long v : values) p.emplace_back(v);
  return p;
}

} // namespace ainv
