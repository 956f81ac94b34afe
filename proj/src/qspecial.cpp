#include "qbailey/qspecial.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace qbailey {

namespace {

void require_n(int n) {
  if (n != 0 && n != 1) throw DomainError("n must be 0 or 1, got " + std::to_string(n));
}

// (q)_L / ((q)_a (q)_b (q)_c) with a + b + c = L, as an exact polynomial.
Series gaussian_multinomial(std::int64_t L, std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t degree = L * L - a * a - b * b - c * c;
  const std::int64_t window = degree + 2;
  Series s = truncate(poch_finite(q_arg, L), window);
  s = divide_by_poch(std::move(s), q_arg, a);
  s = divide_by_poch(std::move(s), q_arg, b);
  s = divide_by_poch(std::move(s), q_arg, c);

  std::vector<Rational> cs;
  if (!s.has_no_terms()) {
    for (std::int64_t e = s.min_exp(); e <= window; ++e) {
      auto x = s.coefficient(e);
      if (e > degree && !is_zero(x)) {
        throw Error("q-multinomial division left a remainder (L=" + std::to_string(L) + ")");
      }
      if (!is_integer(x)) throw Error("q-multinomial division produced a non-integer coefficient");
      if (e <= degree) cs.push_back(std::move(x));
    }
    return Series::polynomial(s.min_exp(), std::move(cs));
  }
  return {};
}

struct QnCache {
  std::shared_mutex mutex;
  std::map<std::tuple<int, std::int64_t, std::int64_t, std::int64_t>, Series> values;
};

QnCache& qn_cache() {
  static QnCache cache;
  return cache;
}

}  // namespace

Series poch_finite(MonomialArg arg, std::int64_t count) {
  if (count < 0) throw DomainError("Pochhammer count must be nonnegative");
  Series out = Series::constant(1);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto e = arg.k + 2 * i;
    Series factor = add(Series::constant(1), Series::monomial(Rational{-arg.sign}, e));
    out = mul(out, factor);
    if (out.is_zero()) break;
  }
  return out;
}

Series poch_infinite(MonomialArg arg, std::int64_t order) {
  if (arg.k <= 0) throw DivergenceError("divergent formal product: argument exponent must be positive");
  Series out = truncate(Series::constant(1), order);
  for (std::int64_t e = arg.k; e <= order; e += 2) {
    out = mul(out, add(Series::constant(1), Series::monomial(Rational{-arg.sign}, e)));
  }
  return out;
}

Series divide_by_poch(Series a, MonomialArg arg, std::int64_t count) {
  if (count < 0) throw DomainError("Pochhammer count must be nonnegative");
  for (std::int64_t i = 0; i < count; ++i) {
    if (a.has_no_terms()) break;
    a = divide_by_binomial(a, arg.sign, arg.k + 2 * i);
  }
  return a;
}

Series inverse_poch(MonomialArg arg, std::int64_t count, std::int64_t order) {
  return divide_by_poch(truncate(Series::constant(1), order), arg, count);
}

Series trinomial_eq1(std::int64_t L, std::int64_t B, std::int64_t A) {
  if (L < 0) throw DomainError("trinomial_eq1 needs L >= 0");
  Series total;
  const std::int64_t j_lo = std::max<std::int64_t>(0, -A);
  // Floor division: L - A may be negative.
  const std::int64_t diff = L - A;
  const std::int64_t j_hi = diff >= 0 ? diff / 2 : -((-diff + 1) / 2);
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const auto c = L - 2 * j - A;
    if (c < 0 || j + A < 0) continue;
    total = add(total, shift(gaussian_multinomial(L, j, j + A, c), 2 * j * (j + B)));
  }
  return total;
}

BigInt classical_trinomial(std::int64_t L, std::int64_t A) {
  if (L < 0) throw DomainError("classical_trinomial needs L >= 0");
  if (std::abs(A) > L) return 0;
  std::vector<BigInt> poly{1};
  for (std::int64_t step = 0; step < L; ++step) {
    std::vector<BigInt> next(poly.size() + 2);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i];
      next[i + 2] += poly[i];
    }
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(L + A)];
}

Series t_n(int n, std::int64_t L, std::int64_t A) {
  require_n(n);
  const Series inverted = substitute_q_inverse(trinomial_eq1(L, A - n, A));
  return shift(inverted, L * (L - n) - A * (A - n));
}

Series q_n_uncached(int n, std::int64_t L, std::int64_t A, std::int64_t order) {
  require_n(n);
  const std::int64_t a_abs = std::abs(A);
  if (L < 0 || a_abs > L) return {};

  Series total = Series::big_o(order);
  for (std::int64_t s = (L + a_abs) % 2; s <= L - a_abs; s += 2) {
    const std::int64_t lead = s * (s - n);
    if (lead > order) break;
    Series term = truncate(Series::monomial(1, lead), order);
    term = divide_by_poch(std::move(term), q_arg, (L - a_abs - s) / 2);
    term = divide_by_poch(std::move(term), q_arg, (L + a_abs - s) / 2);
    term = divide_by_poch(std::move(term), q_arg, s);
    total = add(total, term);
  }
  return total;
}

Series q_n(int n, std::int64_t L, std::int64_t A, std::int64_t order) {
  require_n(n);
  auto key = std::make_tuple(n, L, std::abs(A), order);
  auto& cache = qn_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.values.find(key); it != cache.values.end()) return it->second;
  }
  Series value = q_n_uncached(n, L, A, order);
  std::unique_lock lock(cache.mutex);
  return cache.values.try_emplace(key, std::move(value)).first->second;
}

}  // namespace qbailey
