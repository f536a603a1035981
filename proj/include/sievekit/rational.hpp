#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sievekit {

/// Exact arbitrary-precision rational. Every main term and density product
/// is carried in this type so that the sieve identities can be compared
/// with `==`.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline Rational from_integer(std::int64_t v) { return make_rational(v, 1); }

/// Exact rational value of a finite double.
inline Rational from_double(double v) {
  Rational r;
  mpq_set_d(r.get_mpq_t(), v);
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace sievekit
