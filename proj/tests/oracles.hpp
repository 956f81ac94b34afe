#pragma once

// Test-only reference computations. Nothing here calls into the library's
// division, inversion or Pochhammer code; results are converted to Series
// only at the very end for comparison.

#include <cstdint>
#include <random>
#include <vector>

#include "qbailey/series.hpp"

namespace oracle {

using qbailey::Rational;
using qbailey::Series;

/// Dense coefficients in q-units, index = q-exponent, 0..size-1.
using QPoly = std::vector<Rational>;

inline QPoly naive_mul(const QPoly& a, const QPoly& b, std::size_t keep) {
  QPoly out(std::min(keep, a.size() + b.size() - 1));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Number of partitions of e into parts of size <= m, for e = 0..q_order.
/// Equals the coefficients of 1/(q)_m.
inline QPoly partitions_parts_at_most(std::int64_t m, std::int64_t q_order) {
  // p[e][k]: partitions of e with parts <= k, filled by brute recursion on the largest part.
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(q_order + 1),
                                       std::vector<Rational>(static_cast<std::size_t>(m + 1)));
  for (std::int64_t k = 0; k <= m; ++k) p[0][static_cast<std::size_t>(k)] = 1;
  for (std::int64_t e = 1; e <= q_order; ++e) {
    for (std::int64_t k = 1; k <= m; ++k) {
      Rational total = 0;
      for (std::int64_t part = 1; part <= std::min(k, e); ++part)
        total += p[static_cast<std::size_t>(e - part)][static_cast<std::size_t>(part)];
      p[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)] = total;
    }
  }
  QPoly out(static_cast<std::size_t>(q_order + 1));
  for (std::int64_t e = 0; e <= q_order; ++e) out[static_cast<std::size_t>(e)] = p[static_cast<std::size_t>(e)][static_cast<std::size_t>(m)];
  return out;
}

/// Euler's pentagonal number series for (q)_inf, q-exponents 0..q_order.
inline QPoly pentagonal(std::int64_t q_order) {
  QPoly out(static_cast<std::size_t>(q_order + 1));
  for (std::int64_t k = -q_order; k <= q_order; ++k) {
    const auto e = k * (3 * k - 1) / 2;
    if (e >= 0 && e <= q_order) out[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
  }
  return out;
}

/// Gaussian binomial [n; k]_q via the q-Pascal rule [n;k] = [n-1;k-1] + q^k [n-1;k].
inline QPoly gaussian_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return {};
  std::vector<std::vector<QPoly>> g(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i) {
    g[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i + 1));
    for (std::int64_t j = 0; j <= i; ++j) {
      if (j == 0 || j == i) {
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = QPoly{1};
        continue;
      }
      const QPoly& left = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      const QPoly& right = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      QPoly out(std::max(left.size(), right.size() + static_cast<std::size_t>(j)));
      for (std::size_t e = 0; e < left.size(); ++e) out[e] += left[e];
      for (std::size_t e = 0; e < right.size(); ++e) out[e + static_cast<std::size_t>(j)] += right[e];
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(out);
    }
  }
  return g[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

/// Exact Laurent polynomial from q-unit coefficients times q^(shift_t / 2).
inline Series exact_from_q(const QPoly& q, std::int64_t shift_t = 0) {
  std::vector<Rational> t(q.empty() ? 0 : 2 * q.size() - 1);
  for (std::size_t i = 0; i < q.size(); ++i) t[2 * i] = q[i];
  return Series::polynomial(shift_t, std::move(t));
}

/// Truncated series from q-unit coefficients, known to `order_t` t-units.
inline Series truncated_from_q(const QPoly& q, std::int64_t order_t, std::int64_t shift_t = 0) {
  std::vector<Rational> t(static_cast<std::size_t>(std::max<std::int64_t>(order_t - shift_t + 1, 0)));
  for (std::size_t i = 0; i < q.size() && 2 * i < t.size(); ++i) t[2 * i] = q[i];
  return Series::truncated(shift_t, std::move(t), order_t);
}

/// q-trinomial j-sum built from Gaussian binomials:
///   sum_j q^(j(j+B)) [L; j] [L-j; j+A].
inline Series trinomial_by_gaussians(std::int64_t L, std::int64_t B, std::int64_t A) {
  Series total;
  for (std::int64_t j = 0; 2 * j + A <= L; ++j) {
    if (j + A < 0) continue;
    const QPoly prod = naive_mul(gaussian_binomial(L, j), gaussian_binomial(L - j, j + A), SIZE_MAX);
    total = total + exact_from_q(prod, 2 * j * (j + B));
  }
  return total;
}

/// Number of words in {0,1,2}^L with letter sum L + A.
inline std::int64_t trinomial_by_enumeration(std::int64_t L, std::int64_t A) {
  std::int64_t count = 0;
  std::int64_t words = 1;
  for (std::int64_t i = 0; i < L; ++i) words *= 3;
  for (std::int64_t w = 0; w < words; ++w) {
    std::int64_t x = w, sum = 0;
    for (std::int64_t i = 0; i < L; ++i) {
      sum += x % 3;
      x /= 3;
    }
    if (sum == L + A) ++count;
  }
  return count;
}

/// Random exact Laurent polynomial with support inside [lo, hi] and small coefficients.
inline Series random_polynomial(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, bool allow_fractions = true) {
  std::uniform_int_distribution<std::int64_t> exp_dist(lo, hi);
  std::uniform_int_distribution<int> len_dist(0, 8);
  std::uniform_int_distribution<int> num_dist(-5, 5);
  std::uniform_int_distribution<int> den_dist(1, allow_fractions ? 4 : 1);
  const auto start = exp_dist(rng);
  const auto len = std::min<std::int64_t>(len_dist(rng), hi - start + 1);
  std::vector<Rational> cs;
  for (std::int64_t i = 0; i < len; ++i) cs.push_back(qbailey::make_rational(num_dist(rng), den_dist(rng)));
  return Series::polynomial(start, std::move(cs));
}

}  // namespace oracle
