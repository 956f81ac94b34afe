#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qbailey/bailey.hpp"
#include "qbailey/catalog.hpp"
#include "qbailey/qspecial.hpp"

using namespace qbailey;

namespace {

Series qpoly(std::initializer_list<long> cs, std::int64_t shift_t = 0) {
  oracle::QPoly q;
  for (auto c : cs) q.emplace_back(c);
  return oracle::exact_from_q(q, shift_t);
}

// 1 - q^k as an exact polynomial.
Series one_minus_q(std::int64_t k) { return add(Series::constant(1), Series::monomial(-1, 2 * k)); }

Series over(const Series& num, const Series& den, std::int64_t order) { return mul(truncate(num, order), invert(den, order)); }

TrinomialPair tri(const std::string& name) { return std::get<TrinomialPair>(builtin(name)); }

TrinomialPair negated(const TrinomialPair& p) {
  return {[p](std::int64_t i) { return negate(p.talpha(i)); },
          [p](std::int64_t i, std::int64_t order) { return negate(p.tbeta(i, order)); }, p.n, "neg"};
}

}  // namespace

TEST_CASE("beta from alpha") {
  const std::int64_t N = 40;
  const Series b0 = beta_from_alpha(delta_alpha(), 0, 1, N);
  CHECK(equal_to_order(b0, over(Series::constant(1), mul(one_minus_q(1), one_minus_q(1)), N), N));

  const Series b2 = beta_from_alpha(delta_alpha(), 2, 1, N);
  CHECK(equal_to_order(b2, over(Series::constant(1), mul(one_minus_q(1), one_minus_q(3)), N), N));

  CHECK(beta_from_alpha(delta_alpha(), 0, 0, N) == truncate(Series::constant(1), N));

  const auto a1 = std::get<BinomialPair>(builtin("A1"));
  CHECK(equal_to_order(beta_from_alpha(a1.alpha, 0, 1, N), inverse_poch(q_arg, 2, N), N));
  CHECK(equal_to_order(a1.beta(1, N), inverse_poch(q_arg, 2, N), N));
}

TEST_CASE("binomial pairs") {
  CHECK(verify_binomial_pair(std::get<BinomialPair>(builtin("A1")), 12, 120).passed());
  CHECK(verify_binomial_pair(make_derived_pair(delta_alpha(), 2, "delta"), 6, 60).passed());

  // A1 read relative to a = q fails on its first nontrivial index.
  auto shifted = std::get<BinomialPair>(builtin("A1"));
  shifted.ell = 1;
  const auto report = verify_binomial_pair(shifted, 5, 60);
  CHECK(report.outcome == Outcome::fail);
  REQUIRE(report.first_failure());
  CHECK(report.first_failure()->index == 1);
  REQUIRE(report.first_failure()->mismatch);
  CHECK(report.first_failure()->mismatch->exp_t == 2);
}

TEST_CASE("to_trinomial on the unit pair") {
  const std::int64_t N = 40;
  const auto p = make_derived_pair(delta_alpha(), 0, "delta");
  const auto t0 = to_trinomial(p, 0);
  const auto t1 = to_trinomial(p, 1);
  CHECK(equal_to_order(t0.tbeta(1, N), over(Series::monomial(1, 1), one_minus_q(1), N), N));
  CHECK(equal_to_order(t1.tbeta(1, N), over(Series::constant(1), one_minus_q(1), N), N));
  CHECK(t0.talpha(0) == Series::constant(1));
  CHECK(t0.talpha(1).is_zero());
  CHECK(t0.talpha(2).is_zero());

  const auto with_ell = to_trinomial(make_derived_pair(delta_alpha(), 2, "delta"), 1);
  CHECK(with_ell.tbeta(0, N).has_no_terms());
  CHECK(with_ell.tbeta(1, N).has_no_terms());
  CHECK(with_ell.talpha(2) == Series::constant(1));
}

TEST_CASE("to_trinomial interleaves alpha") {
  const auto a1 = std::get<BinomialPair>(builtin("A1"));
  const auto t = to_trinomial(a1, 0);
  for (std::int64_t L = 0; L <= 10; ++L) {
    CHECK(t.talpha(2 * L) == a1.alpha(L));
    CHECK(t.talpha(2 * L + 1).is_zero());
  }
}

TEST_CASE("transform identity desk values") {
  const std::int64_t N = 60;
  const auto p = make_derived_pair(delta_alpha(), 0, "delta");
  const Series expected =
      add(over(Series::constant(1), mul(one_minus_q(1), one_minus_q(1)), N),
          over(Series::monomial(1, 4), mul(one_minus_q(1), one_minus_q(2)), N));
  CHECK(equal_to_order(lemma2_lhs(p, 0, 2, N), expected, N));
  CHECK(equal_to_order(lemma2_rhs(p, 0, 2, N), expected, N));

  // L < ell: both sums are empty.
  const auto p2 = make_derived_pair(delta_alpha(), 2, "delta");
  for (int n : {0, 1}) {
    CHECK(lemma2_lhs(p2, n, 1, N).has_no_terms());
    CHECK(lemma2_rhs(p2, n, 1, N).has_no_terms());
    CHECK(verify_lemma2(p2, n, 1, N).passed());
  }
}

TEST_CASE("tbeta equals the transform left side") {
  const std::int64_t N = 80;
  const auto a1 = std::get<BinomialPair>(builtin("A1"));
  for (int n : {0, 1}) {
    const auto t = to_trinomial(a1, n);
    for (std::int64_t L = 0; L <= 10; ++L) CHECK(equal_to_order(t.tbeta(L, N), lemma2_lhs(a1, n, L, N), N));
    CHECK(verify_lemma2_range(a1, n, 10, N).passed());
  }
}

TEST_CASE("trinomial pairs") {
  for (int n : {0, 1}) {
    CHECK(verify_trinomial_pair(tri("A1-trinomial:" + std::to_string(n)), 10, 100).passed());
    CHECK(verify_trinomial_pair(tri("AB-A2-trinomial:" + std::to_string(n)), 10, 100).passed());
  }
  const auto printed = verify_trinomial_pair(tri("A1-trinomial-as-printed:0"), 5, 40);
  CHECK(printed.outcome == Outcome::fail);
  REQUIRE(printed.first_failure());
  CHECK(printed.first_failure()->index == 1);
  REQUIRE(printed.first_failure()->mismatch);
  CHECK(printed.first_failure()->mismatch->exp_t == 2);
  CHECK(printed.first_failure()->mismatch->lhs == 0);
  CHECK(printed.first_failure()->mismatch->rhs == -1);
}

TEST_CASE("trinomial Bailey lemma desk values") {
  const std::int64_t N = 40;
  const auto p = make_derived_pair(delta_alpha(), 0, "delta");
  const auto t0 = to_trinomial(p, 0);
  const auto t1 = to_trinomial(p, 1);

  auto [l00, r00] = ab_lemma_sides(t0, 0, N, LhsLimit::m_cutoff);
  CHECK(equal_to_order(l00, Series::constant(1), N));
  CHECK(equal_to_order(r00, Series::constant(1), N));

  const Series e01 = over(qpoly({1, 1}), one_minus_q(1), N);
  auto [l01, r01] = ab_lemma_sides(t0, 1, N, LhsLimit::m_cutoff);
  CHECK(equal_to_order(l01, e01, N));
  CHECK(equal_to_order(r01, e01, N));

  const Series e11 = over(Series::constant(2), one_minus_q(1), N);
  auto [l11, r11] = ab_lemma_sides(t1, 1, N, LhsLimit::m_cutoff);
  CHECK(equal_to_order(l11, e11, N));
  CHECK(equal_to_order(r11, e11, N));
}

TEST_CASE("trinomial Bailey lemma on catalog pairs") {
  for (int n : {0, 1}) {
    const auto p = tri("A1-trinomial:" + std::to_string(n));
    for (std::int64_t M = 0; M <= 5; ++M) CHECK(check_ab_lemma(p, M, 60).passed());
  }
}

TEST_CASE("order-bounded left side differs from the M cutoff") {
  const auto p = tri("A1-trinomial:0");
  CHECK(check_ab_lemma(p, 1, 60, LhsLimit::m_cutoff).passed());
  const auto bounded = check_ab_lemma(p, 1, 60, LhsLimit::order_bounded);
  CHECK(bounded.outcome == Outcome::fail);
  REQUIRE(bounded.first_failure());
  REQUIRE(bounded.first_failure()->mismatch);
  CHECK(bounded.first_failure()->mismatch->exp_t == 2);
  CHECK(bounded.first_failure()->mismatch->lhs == 4);
  CHECK(bounded.first_failure()->mismatch->rhs == 2);
}

TEST_CASE("corollaries") {
  CHECK(equal_to_order(cor2_bracket(0, 40), over(qpoly({1, -1}), qpoly({1, 1}), 40), 40));

  const std::int64_t N = 60;
  const Series pref = corollary_prefactor(N);
  const Series check = mul(pref, mul(poch_infinite(q_arg, N + 4), poch_infinite(q_arg, N + 4)));
  const Series plus = mul(poch_infinite({-1, 2}, N + 4), poch_infinite({-1, 2}, N + 4));
  CHECK(equal_to_order(check, plus, N));

  CHECK(check_cor1(tri("A1-trinomial:0"), N).passed());
  CHECK(check_cor1(tri("AB-A2-trinomial:0"), N).passed());
  CHECK(check_cor2(tri("A1-trinomial:1"), N).passed());
  CHECK(check_cor2(tri("AB-A2-trinomial:1"), N).passed());
  CHECK(check_cor1(sum_pairs(tri("A1-trinomial:0"), tri("AB-A2-trinomial:0")), N).passed());
}

TEST_CASE("a corrupted pair is caught") {
  for (int n : {0, 1}) {
    const auto good = tri("A1-trinomial:" + std::to_string(n));
    TrinomialPair bad = good;
    bad.tbeta = [good](std::int64_t L, std::int64_t order) {
      Series b = good.tbeta(L, order);
      return L == 2 ? add(b, Series::monomial(1, 6)) : b;
    };
    bad.label = "corrupted";
    CHECK(verify_trinomial_pair(bad, 4, 40).outcome == Outcome::fail);
    CHECK((n == 0 ? check_cor1(bad, 40) : check_cor2(bad, 40)).outcome == Outcome::fail);
  }
  CHECK_THROWS_AS(check_cor1(tri("A1-trinomial:1"), 40), DomainError);
}

TEST_CASE("sums of pairs") {
  const auto p = tri("AB-A2-trinomial:0");
  const auto zero = sum_pairs(p, negated(p));
  for (std::int64_t L = 0; L <= 6; ++L) {
    CHECK(zero.talpha(L).is_zero());
    CHECK(zero.tbeta(L, 30).has_no_terms());
  }
  CHECK_THROWS_AS(sum_pairs(p, tri("AB-A2-trinomial:1")), DomainError);
}

TEST_CASE("insufficient order is reported, not thrown") {
  // alpha_1 = q^-2 pulls terms below the working window.
  const ExactSequence alpha = [](std::int64_t r) {
    return r == 1 ? Series::monomial(1, -4) : Series{};
  };
  const auto t = to_trinomial(make_derived_pair(alpha, 0, "negative"), 0);
  const auto report = verify_trinomial_pair(t, 3, 20);
  CHECK(report.outcome != Outcome::pass);
}

TEST_CASE("random alpha give valid trinomial pairs") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> ell_dist(0, 2), n_dist(0, 1);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Series> values;
    for (int r = 0; r <= 4; ++r) values.push_back(oracle::random_polynomial(rng, 0, 6));
    const ExactSequence alpha = [values](std::int64_t r) { return r < 5 ? values[static_cast<std::size_t>(r)] : Series{}; };
    const int ell = ell_dist(rng);
    const int n = n_dist(rng);
    CAPTURE(ell);
    CAPTURE(n);
    CHECK(verify_trinomial_pair(to_trinomial(make_derived_pair(alpha, ell, "random"), n), 7, 60).passed());
  }
}
