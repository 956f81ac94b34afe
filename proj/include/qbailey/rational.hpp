#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "qbailey/errors.hpp"

namespace qbailey {

/// Exact rational, always in lowest terms with positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r{BigInt{static_cast<long>(num)}, BigInt{static_cast<long>(den)}};
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace qbailey
