#pragma once

#include <cstdint>

#include "qbailey/rational.hpp"
#include "qbailey/series.hpp"

namespace qbailey {

/// Pochhammer argument sign * t^k, e.g. q is {+1, 2} and -q^(-1) is {-1, -2}.
struct MonomialArg {
  int sign = 1;
  std::int64_t k = 2;
};

inline constexpr MonomialArg q_arg{1, 2};

/// (arg)_count = prod_{i<count} (1 - sign t^(k+2i)), exact.
Series poch_finite(MonomialArg arg, std::int64_t count);

/// (arg)_inf truncated at `order` t-units; needs arg.k >= 1.
Series poch_infinite(MonomialArg arg, std::int64_t order);

/// a / (arg)_count, one binomial factor at a time. `a` must be truncated.
Series divide_by_poch(Series a, MonomialArg arg, std::int64_t count);

/// 1 / (arg)_count known up to `order`.
Series inverse_poch(MonomialArg arg, std::int64_t count, std::int64_t order);

/**
 * q-trinomial coefficient as the j-sum
 *   sum_j q^(j(j+B)) (q)_L / ((q)_j (q)_(j+A) (q)_(L-2j-A)),
 * with terms whose Pochhammer index would be negative omitted. Exact polynomial.
 */
Series trinomial_eq1(std::int64_t L, std::int64_t B, std::int64_t A);

/// Coefficient of x^(L+A) in (1 + x + x^2)^L by integer expansion.
BigInt classical_trinomial(std::int64_t L, std::int64_t A);

/// T_n(L, A) = q^((L(L-n) - A(A-n))/2) * trinomial_eq1(L, A-n, A) evaluated at 1/q.
Series t_n(int n, std::int64_t L, std::int64_t A);

/**
 * Q_n(L, A) = T_n(L, A) / (q)_L via the s-sum
 *   sum_{s = L+A mod 2} q^(s(s-n)/2) / ((q)_((L-A-s)/2) (q)_((L+A-s)/2) (q)_s),
 * known up to `order`. Symmetric in A; zero when |A| > L or L < 0.
 * Results are memoized per (n, L, |A|, order) in a process-wide cache.
 */
Series q_n(int n, std::int64_t L, std::int64_t A, std::int64_t order);

/// Same as q_n without touching the cache.
Series q_n_uncached(int n, std::int64_t L, std::int64_t A, std::int64_t order);

}  // namespace qbailey
