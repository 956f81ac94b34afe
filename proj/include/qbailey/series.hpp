#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbailey/rational.hpp"

namespace qbailey {

/// Exponent display units: t-units ("t^3") or q-units ("q^(3/2)"), with t = q^(1/2).
enum class Units { t, q };

/**
 * Truncated Laurent series in t = q^(1/2) with exact rational coefficients.
 *
 * A series is either exact (a Laurent polynomial, every coefficient outside
 * the stored support is zero) or truncated, in which case the coefficients
 * are guaranteed correct for exponents up to and including order() and
 * nothing is known beyond.
 *
 * Storage is dense from min_exp() upward. Leading zeros are always trimmed;
 * exact series also trim trailing zeros. A truncated series with no known
 * nonzero term (an O(t^(order+1)) tail) has empty storage and reports
 * min_exp() = order() + 1. The exact zero series has empty storage.
 */
class Series {
 public:
  /// The exact zero series.
  Series() = default;

  static Series constant(Rational c);
  static Series monomial(Rational c, std::int64_t exp);
  /// Exact Laurent polynomial with coeffs[i] at exponent min_exp + i.
  static Series polynomial(std::int64_t min_exp, std::vector<Rational> coeffs);
  /// Truncated series known up to `order`; coefficients past `order` are dropped.
  static Series truncated(std::int64_t min_exp, std::vector<Rational> coeffs,
                          std::int64_t order);
  /// O(t^(order+1)).
  static Series big_o(std::int64_t order);

  bool is_exact() const noexcept { return exact_; }
  /// True only for the exact zero series.
  bool is_zero() const noexcept { return exact_ && coeffs_.empty(); }
  /// True when no nonzero coefficient is stored (exact zero or a bare tail).
  bool has_no_terms() const noexcept { return coeffs_.empty(); }

  /// Largest exponent with a guaranteed coefficient; empty for exact series.
  std::optional<std::int64_t> order() const noexcept;

  /// Lowest exponent that may carry a nonzero coefficient. Throws on the exact zero.
  std::int64_t min_exp() const;
  /// Highest stored exponent of an exact nonzero series.
  std::int64_t max_exp() const;

  /// Stored coefficients, starting at min_exp().
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of t^e. Throws InsufficientOrder past the guaranteed order.
  Rational coefficient(std::int64_t e) const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  void canonicalize();

  std::int64_t min_exp_ = 0;
  std::vector<Rational> coeffs_;
  std::int64_t order_ = 0;
  bool exact_ = true;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Series& a, const Rational& c);
/// Cauchy product. Guaranteed order is min(a.order + b.min_exp, b.order + a.min_exp).
Series mul(const Series& a, const Series& b);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return negate(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator*(const Rational& c, const Series& a) { return scale(a, c); }

/// Multiplication by t^k. Shifts the guaranteed order along with the terms.
Series shift(const Series& a, std::int64_t k);

/// Drops everything above `order`; the result is never exact.
Series truncate(const Series& a, std::int64_t order);

/**
 * Reciprocal series. For a truncated input the result is known to
 * a.order - 2 * a.min_exp. An exact monomial has an exact reciprocal; any
 * other exact input needs an explicit `order`. When both are available the
 * smaller one wins.
 */
Series invert(const Series& a, std::optional<std::int64_t> order = std::nullopt);

/// a / (1 - sign * t^e) for sign = +-1. A nonconstant divisor needs a truncated `a`.
Series divide_by_binomial(const Series& a, int sign, std::int64_t e);

/// q -> 1/q, i.e. t^e -> t^(-e). Only defined on Laurent polynomials.
Series substitute_q_inverse(const Series& a);

inline Rational coefficient(const Series& a, std::int64_t e) { return a.coefficient(e); }

/// Value at q = 1 of a Laurent polynomial.
Rational sum_coefficients(const Series& a);

struct Mismatch {
  std::int64_t exp_t = 0;
  Rational lhs;
  Rational rhs;
};

struct OrderComparison {
  bool equal = true;
  std::optional<Mismatch> mismatch;

  explicit operator bool() const noexcept { return equal; }
};

/**
 * Compares coefficients at every exponent <= n. Throws InsufficientOrder when
 * either side is not guaranteed up to n; a mismatch is reported as the
 * smallest differing exponent.
 */
OrderComparison equal_to_order(const Series& a, const Series& b, std::int64_t n);

std::string to_string(const Series& a, Units units = Units::t);

}  // namespace qbailey
