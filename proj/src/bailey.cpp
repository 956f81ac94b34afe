#include "qbailey/bailey.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "qbailey/qspecial.hpp"

namespace qbailey {

namespace {

void require_n(int n) {
  if (n != 0 && n != 1) throw DomainError("n must be 0 or 1, got " + std::to_string(n));
}

constexpr MonomialArg minus_one{-1, 0};    // (-1)_L
constexpr MonomialArg minus_q_inv{-1, -2};  // (-q^(-1))_L

// Sums term(L) for L = 0, 1, ... while the summand's structural lower bound
// on the minimum exponent is still inside the window.
template <class Bound, class Term>
Series sum_until_beyond(std::int64_t order, std::int64_t L_cap, Bound bound, Term term) {
  Series total = Series::big_o(order);
  for (std::int64_t L = 0; bound(L) <= order; ++L) {
    if (L > L_cap) {
      throw DivergenceError("no formal convergence witnessed before L_cap = " + std::to_string(L_cap));
    }
    total = add(total, term(L));
  }
  return total;
}

void require_nonnegative(const Series& payload, std::int64_t L, const char* what) {
  if (!payload.has_no_terms() && payload.min_exp() < 0) {
    throw DivergenceError(std::string("summand minimum exponent fails to grow: ") + what + "_" +
                          std::to_string(L) + " has t-exponent " + std::to_string(payload.min_exp()));
  }
}

// a / (t^(-L) + t^L) = t^L a / (1 + t^(2L))
Series over_symmetric_pair(const Series& a, std::int64_t L, std::int64_t order) {
  return divide_by_binomial(truncate(shift(a, L), order), -1, 2 * L);
}

Series tbeta_lhs_prefactor(int n, std::int64_t L) {
  if (n == 0) return shift(poch_finite(minus_one, L), L);
  return shift(poch_finite(minus_q_inv, L), 2 * L);
}

std::int64_t tbeta_lhs_bound(int n, std::int64_t L) {
  if (n == 0) return L;
  return std::max<std::int64_t>(0, 2 * L - 2);
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::insufficient_order: return "insufficient-order";
  }
  return "unknown";
}

const CheckRecord* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status != Outcome::pass) return &c;
  return nullptr;
}

void VerificationReport::add(CheckRecord record) {
  if (record.status == Outcome::fail) {
    outcome = Outcome::fail;
  } else if (record.status == Outcome::insufficient_order && outcome == Outcome::pass) {
    outcome = Outcome::insufficient_order;
  }
  checks.push_back(std::move(record));
}

CheckRecord compare_sides(std::int64_t index, const Series& lhs, const Series& rhs, std::int64_t order) {
  CheckRecord record;
  record.index = index;
  try {
    auto cmp = equal_to_order(lhs, rhs, order);
    if (!cmp) {
      record.status = Outcome::fail;
      record.mismatch = std::move(cmp.mismatch);
    }
  } catch (const InsufficientOrder& e) {
    record.status = Outcome::insufficient_order;
    record.note = e.what();
  }
  return record;
}

namespace {

// Evaluates both sides and compares; an InsufficientOrder raised while
// building either side is reported rather than propagated.
template <class Sides>
CheckRecord checked(std::int64_t index, std::int64_t order, Sides sides) {
  try {
    auto [lhs, rhs] = sides();
    return compare_sides(index, lhs, rhs, order);
  } catch (const InsufficientOrder& e) {
    CheckRecord record;
    record.index = index;
    record.status = Outcome::insufficient_order;
    record.note = e.what();
    return record;
  }
}

template <class Key>
struct MemoState {
  std::shared_mutex mutex;
  std::map<Key, Series> values;
};

}  // namespace

TruncatedSequence memoize(TruncatedSequence seq) {
  auto state = std::make_shared<MemoState<std::pair<std::int64_t, std::int64_t>>>();
  return [seq = std::move(seq), state](std::int64_t index, std::int64_t order) -> Series {
    const auto key = std::make_pair(index, order);
    {
      std::shared_lock lock(state->mutex);
      if (auto it = state->values.find(key); it != state->values.end()) return it->second;
    }
    Series value = seq(index, order);
    std::unique_lock lock(state->mutex);
    return state->values.try_emplace(key, std::move(value)).first->second;
  };
}

ExactSequence memoize(ExactSequence seq) {
  auto state = std::make_shared<MemoState<std::int64_t>>();
  return [seq = std::move(seq), state](std::int64_t index) -> Series {
    {
      std::shared_lock lock(state->mutex);
      if (auto it = state->values.find(index); it != state->values.end()) return it->second;
    }
    Series value = seq(index);
    std::unique_lock lock(state->mutex);
    return state->values.try_emplace(index, std::move(value)).first->second;
  };
}

Series beta_from_alpha(const ExactSequence& alpha, int ell, std::int64_t L, std::int64_t order) {
  if (ell < 0) throw DomainError("ell must be nonnegative");
  const MonomialArg aq{1, 2 * ell + 2};
  Series total = Series::big_o(order);
  for (std::int64_t r = 0; r <= L; ++r) {
    const Series a = alpha(r);
    if (a.is_zero()) continue;
    Series term = truncate(a, order);
    term = divide_by_poch(std::move(term), q_arg, L - r);
    term = divide_by_poch(std::move(term), aq, L + r);
    total = add(total, term);
  }
  return total;
}

BinomialPair make_derived_pair(ExactSequence alpha, int ell, std::string label) {
  if (ell < 0) throw DomainError("ell must be nonnegative");
  auto a = memoize(std::move(alpha));
  auto beta = memoize(TruncatedSequence{[a, ell](std::int64_t L, std::int64_t order) {
    return beta_from_alpha(a, ell, L, order);
  }});
  return {a, beta, ell, std::move(label)};
}

ExactSequence delta_alpha() {
  return [](std::int64_t r) { return r == 0 ? Series::constant(1) : Series{}; };
}

VerificationReport verify_binomial_pair(const BinomialPair& pair, std::int64_t L_max, std::int64_t order) {
  VerificationReport report;
  report.identity = "pair";
  report.parameters = {{"ell", pair.ell}, {"L_max", L_max}, {"order", order}};
  for (std::int64_t L = 0; L <= L_max; ++L) {
    report.add(checked(L, order, [&] {
      return std::make_pair(pair.beta(L, order), beta_from_alpha(pair.alpha, pair.ell, L, order));
    }));
  }
  return report;
}

TrinomialPair to_trinomial(const BinomialPair& pair, int n) {
  require_n(n);
  const int ell = pair.ell;
  ExactSequence alpha = pair.alpha;
  TruncatedSequence beta = pair.beta;

  ExactSequence talpha = [alpha, ell](std::int64_t i) -> Series {
    if (i < ell || (i - ell) % 2 != 0) return {};
    return alpha((i - ell) / 2);
  };
  TruncatedSequence tbeta = [beta, ell, n](std::int64_t i, std::int64_t order) -> Series {
    if (i < ell) return {};
    const std::int64_t L = i - ell;
    Series total = Series::big_o(order);
    for (std::int64_t s = L % 2; s <= L; s += 2) {
      const std::int64_t lead = s * (s - n);
      if (lead > order) break;
      Series term = truncate(shift(beta((L - s) / 2, order), lead), order);
      term = divide_by_poch(std::move(term), q_arg, ell);
      term = divide_by_poch(std::move(term), q_arg, s);
      total = add(total, term);
    }
    return total;
  };
  return {memoize(std::move(talpha)), memoize(std::move(tbeta)), n,
          pair.label + " -> trinomial (n=" + std::to_string(n) + ")"};
}

VerificationReport verify_trinomial_pair(const TrinomialPair& pair, std::int64_t L_max, std::int64_t order) {
  VerificationReport report;
  report.identity = "tripair";
  report.parameters = {{"n", pair.n}, {"L_max", L_max}, {"order", order}};
  for (std::int64_t L = 0; L <= L_max; ++L) {
    report.add(checked(L, order, [&] {
      Series rhs = Series::big_o(order);
      for (std::int64_t r = 0; r <= L; ++r) {
        const Series a = pair.talpha(r);
        if (a.is_zero()) continue;
        rhs = add(rhs, mul(q_n(pair.n, L, r, order), a));
      }
      return std::make_pair(pair.tbeta(L, order), rhs);
    }));
  }
  return report;
}

Series lemma2_lhs(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order) {
  require_n(n);
  const int ell = pair.ell;
  if (ell > L) return {};
  Series total = Series::big_o(order);
  for (std::int64_t s = (L + ell) % 2; s <= L - ell; s += 2) {
    const std::int64_t lead = s * (s - n);
    if (lead > order) break;
    Series term = shift(pair.beta((L - s - ell) / 2, order), lead);
    term = divide_by_poch(truncate(term, order), q_arg, ell);
    term = divide_by_poch(std::move(term), q_arg, s);
    total = add(total, term);
  }
  return total;
}

Series lemma2_rhs(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order) {
  require_n(n);
  const int ell = pair.ell;
  if (ell > L) return {};
  Series total = Series::big_o(order);
  for (std::int64_t r = 0; 2 * r + ell <= L; ++r) {
    const Series a = pair.alpha(r);
    if (a.is_zero()) continue;
    total = add(total, mul(q_n(n, L, 2 * r + ell, order), a));
  }
  return total;
}

VerificationReport verify_lemma2(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order) {
  VerificationReport report;
  report.identity = "lemma2";
  report.parameters = {{"n", n}, {"ell", pair.ell}, {"L", L}, {"order", order}};
  report.add(checked(L, order, [&] {
    return std::make_pair(lemma2_lhs(pair, n, L, order), lemma2_rhs(pair, n, L, order));
  }));
  return report;
}

VerificationReport verify_lemma2_range(const BinomialPair& pair, int n, std::int64_t L_max,
                                       std::int64_t order) {
  VerificationReport report;
  report.identity = "lemma2";
  report.parameters = {{"n", n}, {"ell", pair.ell}, {"L_max", L_max}, {"order", order}};
  for (std::int64_t L = 0; L <= L_max; ++L) {
    for (auto& c : verify_lemma2(pair, n, L, order).checks) report.add(std::move(c));
  }
  return report;
}

std::pair<Series, Series> ab_lemma_sides(const TrinomialPair& pair, std::int64_t M, std::int64_t order,
                                         LhsLimit limit, std::int64_t L_cap) {
  require_n(pair.n);
  if (M < 0) throw DomainError("M must be nonnegative");
  const int n = pair.n;

  auto lhs_term = [&](std::int64_t L) {
    const Series b = pair.tbeta(L, order);
    if (limit == LhsLimit::order_bounded) require_nonnegative(b, L, "tbeta");
    return truncate(mul(tbeta_lhs_prefactor(n, L), b), order);
  };

  Series lhs = Series::big_o(order);
  if (limit == LhsLimit::m_cutoff) {
    for (std::int64_t L = 0; L <= M; ++L) lhs = add(lhs, lhs_term(L));
  } else {
    lhs = sum_until_beyond(order, L_cap, [n](std::int64_t L) { return tbeta_lhs_bound(n, L); }, lhs_term);
  }

  // Q_1(M, L) and Q_1(M-1, L+-1) vanish for L > M.
  Series sum = Series::big_o(order);
  for (std::int64_t L = 0; L <= M; ++L) {
    const Series a = pair.talpha(L);
    if (a.is_zero()) continue;
    if (n == 0) {
      sum = add(sum, mul(over_symmetric_pair(a, L, order), q_n(1, M, L, order)));
    } else {
      Series bracket = q_n(1, M, L, order);
      bracket = sub(bracket, divide_by_binomial(q_n(1, M - 1, L + 1, order), -1, -2 * L - 2));
      bracket = sub(bracket, divide_by_binomial(q_n(1, M - 1, L - 1, order), -1, 2 * L - 2));
      sum = add(sum, mul(a, bracket));
    }
  }
  const Series outer = n == 0 ? poch_finite(minus_one, M + 1) : poch_finite(minus_one, M);
  return {lhs, truncate(mul(outer, sum), order)};
}

VerificationReport check_ab_lemma(const TrinomialPair& pair, std::int64_t M, std::int64_t order,
                                  LhsLimit limit, std::int64_t L_cap) {
  VerificationReport report;
  report.identity = "ab-lemma";
  report.parameters = {{"n", pair.n},
                       {"M", M},
                       {"order", order},
                       {"lhs_order_bounded", limit == LhsLimit::order_bounded ? 1 : 0}};
  report.add(checked(M, order, [&] { return ab_lemma_sides(pair, M, order, limit, L_cap); }));
  return report;
}

Series corollary_prefactor(std::int64_t order) {
  const Series plus = poch_infinite({-1, 2}, order);
  const Series minus = poch_infinite(q_arg, order);
  return truncate(mul(mul(plus, plus), invert(mul(minus, minus))), order);
}

Series cor2_bracket(std::int64_t L, std::int64_t order) {
  const Series one = truncate(Series::constant(1), order);
  return truncate(sub(divide_by_binomial(one, -1, 2 * L + 2), divide_by_binomial(one, -1, 2 * L - 2)), order);
}

std::pair<Series, Series> cor1_sides(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap) {
  if (pair.n != 0) throw DomainError("the n = 0 corollary needs a trinomial pair relative to 0");
  auto bound = [](std::int64_t L) { return L; };

  Series lhs = sum_until_beyond(order, L_cap, bound, [&](std::int64_t L) {
    const Series b = pair.tbeta(L, order);
    require_nonnegative(b, L, "tbeta");
    return truncate(mul(tbeta_lhs_prefactor(0, L), b), order);
  });
  Series rhs = sum_until_beyond(order, L_cap, bound, [&](std::int64_t L) -> Series {
    const Series a = pair.talpha(L);
    if (a.is_zero()) return Series{};
    require_nonnegative(a, L, "talpha");
    return over_symmetric_pair(a, L, order);
  });
  return {scale(lhs, Rational{1, 2}), truncate(mul(corollary_prefactor(order), rhs), order)};
}

std::pair<Series, Series> cor2_sides(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap) {
  if (pair.n != 1) throw DomainError("the n = 1 corollary needs a trinomial pair relative to 1");
  auto bound = [](std::int64_t L) { return std::max<std::int64_t>(0, 2 * L - 2); };

  Series lhs = sum_until_beyond(order, L_cap, bound, [&](std::int64_t L) {
    const Series b = pair.tbeta(L, order);
    require_nonnegative(b, L, "tbeta");
    return truncate(mul(tbeta_lhs_prefactor(1, L), b), order);
  });
  Series rhs = sum_until_beyond(order, L_cap, bound, [&](std::int64_t L) -> Series {
    const Series a = pair.talpha(L);
    if (a.is_zero()) return Series{};
    require_nonnegative(a, L, "talpha");
    return truncate(mul(a, cor2_bracket(L, order)), order);
  });
  return {scale(lhs, Rational{1, 2}), truncate(mul(corollary_prefactor(order), rhs), order)};
}

VerificationReport check_cor1(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap) {
  VerificationReport report;
  report.identity = "cor1";
  report.parameters = {{"n", pair.n}, {"order", order}, {"L_cap", L_cap}};
  report.add(checked(0, order, [&] { return cor1_sides(pair, order, L_cap); }));
  return report;
}

VerificationReport check_cor2(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap) {
  VerificationReport report;
  report.identity = "cor2";
  report.parameters = {{"n", pair.n}, {"order", order}, {"L_cap", L_cap}};
  report.add(checked(0, order, [&] { return cor2_sides(pair, order, L_cap); }));
  return report;
}

TrinomialPair sum_pairs(const TrinomialPair& a, const TrinomialPair& b) {
  if (a.n != b.n) throw DomainError("cannot sum trinomial pairs relative to different n");
  ExactSequence talpha = [x = a.talpha, y = b.talpha](std::int64_t i) { return add(x(i), y(i)); };
  TruncatedSequence tbeta = [x = a.tbeta, y = b.tbeta](std::int64_t i, std::int64_t order) {
    return add(x(i, order), y(i, order));
  };
  return {memoize(std::move(talpha)), memoize(std::move(tbeta)), a.n, a.label + " + " + b.label};
}

}  // namespace qbailey
