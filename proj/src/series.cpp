#include "qbailey/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <utility>

namespace qbailey {

namespace {

// Accumulates dst += x * y without building an expression temporary.
inline void add_product(Rational& dst, const Rational& x, const Rational& y, Rational& scratch) {
  mpq_mul(scratch.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
  mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), scratch.get_mpq_t());
}

std::int64_t end_exp(const Series& a) {
  // One past the highest stored exponent.
  return a.has_no_terms() ? a.min_exp() : a.min_exp() + static_cast<std::int64_t>(a.coeffs().size());
}

std::string exponent_text(std::int64_t e, Units units) {
  if (units == Units::t) {
    return e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e);
  }
  if (e % 2 == 0) {
    const auto h = e / 2;
    return h < 0 ? "(" + std::to_string(h) + ")" : std::to_string(h);
  }
  return "(" + std::to_string(e) + "/2)";
}

std::string power_text(std::int64_t e, Units units) {
  const char* var = units == Units::t ? "t" : "q";
  const bool unit_power = units == Units::t ? e == 1 : e == 2;
  if (unit_power) return var;
  return std::string(var) + "^" + exponent_text(e, units);
}

}  // namespace

Series Series::constant(Rational c) { return monomial(std::move(c), 0); }

Series Series::monomial(Rational c, std::int64_t exp) {
  return polynomial(exp, {std::move(c)});
}

Series Series::polynomial(std::int64_t min_exp, std::vector<Rational> coeffs) {
  Series s;
  s.min_exp_ = min_exp;
  s.coeffs_ = std::move(coeffs);
  s.exact_ = true;
  s.canonicalize();
  return s;
}

Series Series::truncated(std::int64_t min_exp, std::vector<Rational> coeffs, std::int64_t order) {
  Series s;
  s.exact_ = false;
  s.order_ = order;
  s.min_exp_ = min_exp;
  const std::int64_t len = order - min_exp + 1;
  if (len <= 0) {
    s.coeffs_.clear();
  } else {
    s.coeffs_ = std::move(coeffs);
    s.coeffs_.resize(static_cast<std::size_t>(len));
  }
  s.canonicalize();
  return s;
}

Series Series::big_o(std::int64_t order) { return truncated(order + 1, {}, order); }

void Series::canonicalize() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return !qbailey::is_zero(c); });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    min_exp_ = exact_ ? 0 : order_ + 1;
    return;
  }
  min_exp_ += first - coeffs_.begin();
  coeffs_.erase(coeffs_.begin(), first);
  if (exact_) {
    while (qbailey::is_zero(coeffs_.back())) coeffs_.pop_back();
  }
}

std::optional<std::int64_t> Series::order() const noexcept {
  if (exact_) return std::nullopt;
  return order_;
}

std::int64_t Series::min_exp() const {
  if (is_zero()) throw DomainError("the zero series has no minimum exponent");
  return min_exp_;
}

std::int64_t Series::max_exp() const {
  if (!exact_ || coeffs_.empty()) throw DomainError("max_exp needs a nonzero Laurent polynomial");
  return min_exp_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
}

Rational Series::coefficient(std::int64_t e) const {
  if (!exact_ && e > order_) {
    throw InsufficientOrder("beyond guaranteed order: t^" + std::to_string(e) + " requested, order " +
                            std::to_string(order_));
  }
  if (coeffs_.empty() || e < min_exp_) return 0;
  const auto i = e - min_exp_;
  if (i >= static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Series add(const Series& a, const Series& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  std::optional<std::int64_t> order;
  if (!a.is_exact()) order = *a.order();
  if (!b.is_exact()) order = order ? std::min(*order, *b.order()) : *b.order();

  const std::int64_t lo = std::min(a.min_exp(), b.min_exp());
  std::int64_t hi = std::max(end_exp(a), end_exp(b)) - 1;
  if (order) hi = std::min(hi, *order);

  std::vector<Rational> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)));
  for (const Series* s : {&a, &b}) {
    const auto cs = s->coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto e = s->min_exp() + static_cast<std::int64_t>(i);
      if (e > hi) break;
      out[static_cast<std::size_t>(e - lo)] += cs[i];
    }
  }
  if (order) return Series::truncated(lo, std::move(out), *order);
  return Series::polynomial(lo, std::move(out));
}

Series negate(const Series& a) { return scale(a, Rational{-1}); }

Series sub(const Series& a, const Series& b) { return add(a, negate(b)); }

Series scale(const Series& a, const Rational& c) {
  if (is_zero(c)) return {};
  if (a.has_no_terms()) return a;
  std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : out) x *= c;
  if (a.is_exact()) return Series::polynomial(a.min_exp(), std::move(out));
  return Series::truncated(a.min_exp(), std::move(out), *a.order());
}

Series mul(const Series& a, const Series& b) {
  if (a.is_zero() || b.is_zero()) return {};

  const std::int64_t lo = a.min_exp() + b.min_exp();
  std::optional<std::int64_t> order;
  if (!a.is_exact() && !b.is_exact()) {
    order = std::min(*a.order() + b.min_exp(), *b.order() + a.min_exp());
  } else if (!a.is_exact()) {
    order = *a.order() + b.min_exp();
  } else if (!b.is_exact()) {
    order = *b.order() + a.min_exp();
  }

  std::int64_t hi = end_exp(a) + end_exp(b) - 2;
  if (order) hi = std::min(hi, *order);
  if (hi < lo) return order ? Series::big_o(*order) : Series{};

  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  const auto span = hi - lo;

  // Nonzero positions of the sparser operand drive the outer loop.
  std::vector<std::size_t> nz_b;
  for (std::size_t j = 0; j < cb.size(); ++j)
    if (!is_zero(cb[j])) nz_b.push_back(j);

  std::vector<Rational> out(static_cast<std::size_t>(span + 1));
  Rational scratch;
  for (std::size_t i = 0; i < ca.size() && static_cast<std::int64_t>(i) <= span; ++i) {
    if (is_zero(ca[i])) continue;
    for (const auto j : nz_b) {
      const auto k = static_cast<std::int64_t>(i + j);
      if (k > span) break;
      add_product(out[static_cast<std::size_t>(k)], ca[i], cb[j], scratch);
    }
  }
  if (order) return Series::truncated(lo, std::move(out), *order);
  return Series::polynomial(lo, std::move(out));
}

Series shift(const Series& a, std::int64_t k) {
  if (a.is_zero()) return a;
  std::vector<Rational> cs(a.coeffs().begin(), a.coeffs().end());
  if (a.is_exact()) return Series::polynomial(a.min_exp() + k, std::move(cs));
  return Series::truncated(a.min_exp() + k, std::move(cs), *a.order() + k);
}

Series truncate(const Series& a, std::int64_t order) {
  if (a.order()) order = std::min(order, *a.order());
  if (a.has_no_terms()) return Series::big_o(order);
  std::vector<Rational> cs(a.coeffs().begin(), a.coeffs().end());
  return Series::truncated(a.min_exp(), std::move(cs), order);
}

Series invert(const Series& a, std::optional<std::int64_t> order) {
  if (a.is_zero()) throw DomainError("division by zero series");
  if (a.has_no_terms()) throw InsufficientOrder("cannot invert a series with no known terms");

  const auto m = a.min_exp();
  const auto ca = a.coeffs();
  const Rational inv_lead = 1 / ca[0];

  if (a.is_exact() && ca.size() == 1) {
    Series exact = Series::monomial(inv_lead, -m);
    return order ? truncate(exact, *order) : exact;
  }

  std::int64_t result_order = 0;
  if (!a.is_exact()) {
    result_order = *a.order() - 2 * m;
    if (order) result_order = std::min(result_order, *order);
  } else {
    if (!order) throw DomainError("inverting a Laurent polynomial needs a working order");
    result_order = *order;
  }

  // Relative to t^(-m), the reciprocal of a * t^(-m) is needed for indices 0..len-1.
  const std::int64_t len = result_order + m + 1;
  if (len <= 0) return Series::big_o(result_order);

  std::vector<std::pair<std::size_t, Rational>> tail;
  for (std::size_t i = 1; i < ca.size() && static_cast<std::int64_t>(i) < len; ++i)
    if (!is_zero(ca[i])) tail.emplace_back(i, ca[i]);

  std::vector<Rational> out(static_cast<std::size_t>(len));
  out[0] = inv_lead;
  Rational acc, scratch;
  for (std::size_t k = 1; k < out.size(); ++k) {
    acc = 0;
    for (const auto& [i, c] : tail) {
      if (i > k) break;
      add_product(acc, c, out[k - i], scratch);
    }
    out[k] = -acc * inv_lead;
  }
  return Series::truncated(-m, std::move(out), result_order);
}

Series divide_by_binomial(const Series& a, int sign, std::int64_t e) {
  if (sign != 1 && sign != -1) throw DomainError("binomial sign must be +1 or -1");
  if (e == 0) {
    if (sign == 1) throw DomainError("division by zero series");
    return scale(a, Rational{1, 2});
  }
  if (a.is_zero()) return a;
  if (a.is_exact()) throw DomainError("truncate before dividing by a nonconstant binomial");
  if (e < 0) {
    // 1 - s t^e = -s t^e (1 - s t^(-e))
    return divide_by_binomial(scale(shift(a, -e), Rational{-sign}), sign, -e);
  }
  if (a.has_no_terms()) return a;

  std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
  const auto step = static_cast<std::size_t>(e);
  for (std::size_t i = step; i < out.size(); ++i) {
    if (sign == 1) {
      out[i] += out[i - step];
    } else {
      out[i] -= out[i - step];
    }
  }
  return Series::truncated(a.min_exp(), std::move(out), *a.order());
}

Series substitute_q_inverse(const Series& a) {
  if (!a.is_exact()) throw DomainError("substitution requires a Laurent polynomial");
  if (a.is_zero()) return a;
  std::vector<Rational> cs(a.coeffs().rbegin(), a.coeffs().rend());
  return Series::polynomial(-a.max_exp(), std::move(cs));
}

Rational sum_coefficients(const Series& a) {
  if (!a.is_exact()) throw DomainError("evaluation at q = 1 needs a Laurent polynomial");
  Rational total = 0;
  for (const auto& c : a.coeffs()) total += c;
  return total;
}

OrderComparison equal_to_order(const Series& a, const Series& b, std::int64_t n) {
  for (const Series* s : {&a, &b}) {
    if (s->order() && *s->order() < n) {
      throw InsufficientOrder("insufficient order: need " + std::to_string(n) + ", have " +
                              std::to_string(*s->order()));
    }
  }
  if (a.is_zero() && b.is_zero()) return {};
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  for (const Series* s : {&a, &b})
    if (!s->has_no_terms()) lo = std::min(lo, s->min_exp());
  if (lo == std::numeric_limits<std::int64_t>::max()) return {};

  std::int64_t hi = n;
  if (a.is_exact() && b.is_exact()) {
    std::int64_t top = lo;
    for (const Series* s : {&a, &b})
      if (!s->is_zero()) top = std::max(top, s->max_exp());
    hi = std::min(hi, top);
  }

  for (auto e = lo; e <= hi; ++e) {
    auto x = a.coefficient(e);
    auto y = b.coefficient(e);
    if (x != y) return {false, Mismatch{e, std::move(x), std::move(y)}};
  }
  return {};
}

std::string to_string(const Series& a, Units units) {
  std::ostringstream os;
  bool first = true;
  const auto cs = a.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Rational& c = cs[i];
    if (is_zero(c)) continue;
    const auto e = a.min_exp() + static_cast<std::int64_t>(i);
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << power_text(e, units);
    } else {
      os << to_string(mag) << "*" << power_text(e, units);
    }
  }
  if (!a.is_exact()) {
    const auto tail = *a.order() + 1;
    const char* var = units == Units::t ? "t" : "q";
    if (!first) os << " + ";
    os << "O(" << var << "^" << exponent_text(tail, units) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

}  // namespace qbailey
