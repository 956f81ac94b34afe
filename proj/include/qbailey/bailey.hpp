#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbailey/series.hpp"

namespace qbailey {

/// index -> exact Laurent polynomial (alpha sides).
using ExactSequence = std::function<Series(std::int64_t index)>;
/// (index, order) -> series known up to at least `order` (beta sides).
using TruncatedSequence = std::function<Series(std::int64_t index, std::int64_t order)>;

/// Wraps a sequence with a thread-safe per-(index, order) cache.
TruncatedSequence memoize(TruncatedSequence seq);
ExactSequence memoize(ExactSequence seq);

/// Bailey pair relative to a = q^ell:
///   beta_L = sum_{r<=L} alpha_r / ((q)_(L-r) (a q)_(L+r)).
struct BinomialPair {
  ExactSequence alpha;
  TruncatedSequence beta;
  int ell = 0;
  std::string label;
};

/// Trinomial Bailey pair relative to n: tbeta_L = sum_{r<=L} Q_n(L, r) talpha_r.
struct TrinomialPair {
  ExactSequence talpha;
  TruncatedSequence tbeta;
  int n = 0;
  std::string label;
};

enum class Outcome { pass, fail, insufficient_order };

std::string to_string(Outcome o);

struct CheckRecord {
  std::int64_t index = 0;
  Outcome status = Outcome::pass;
  std::optional<Mismatch> mismatch;
  std::string note;
};

struct VerificationReport {
  std::string identity;
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  Outcome outcome = Outcome::pass;
  std::vector<CheckRecord> checks;

  /// First check that did not pass, in ascending index order.
  const CheckRecord* first_failure() const;
  bool passed() const noexcept { return outcome == Outcome::pass; }
  void add(CheckRecord record);
};

/// Compares lhs and rhs up to `order`; insufficient order becomes its own status.
CheckRecord compare_sides(std::int64_t index, const Series& lhs, const Series& rhs, std::int64_t order);

// Binomial pairs ------------------------------------------------------------

Series beta_from_alpha(const ExactSequence& alpha, int ell, std::int64_t L, std::int64_t order);

/// Pair whose beta is generated from alpha by the defining sum.
BinomialPair make_derived_pair(ExactSequence alpha, int ell, std::string label);

/// alpha_r = delta_(r,0).
ExactSequence delta_alpha();

VerificationReport verify_binomial_pair(const BinomialPair& pair, std::int64_t L_max, std::int64_t order);

// Binomial -> trinomial -----------------------------------------------------

/**
 * Interleaves alpha (talpha_(2L+ell) = alpha_L, zero elsewhere) and builds
 *   tbeta_(L+ell) = sum_{s = L mod 2, s <= L} q^(s(s-n)/2) / ((q)_ell (q)_s) beta_((L-s)/2),
 * with tbeta_0..tbeta_(ell-1) = 0. Entries are evaluated lazily and memoized.
 */
TrinomialPair to_trinomial(const BinomialPair& pair, int n);

VerificationReport verify_trinomial_pair(const TrinomialPair& pair, std::int64_t L_max, std::int64_t order);

/// Left side: sum over s = L+ell mod 2, 0 <= s <= L-ell of q^(s(s-n)/2)/((q)_ell (q)_s) beta_((L-s-ell)/2).
Series lemma2_lhs(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order);
/// Right side: sum_r Q_n(L, 2r+ell) alpha_r.
Series lemma2_rhs(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order);

VerificationReport verify_lemma2(const BinomialPair& pair, int n, std::int64_t L, std::int64_t order);
VerificationReport verify_lemma2_range(const BinomialPair& pair, int n, std::int64_t L_max,
                                       std::int64_t order);

// Trinomial Bailey lemma and corollaries -------------------------------------

/// Upper limit of the left-hand sums in the trinomial Bailey lemma.
enum class LhsLimit { m_cutoff, order_bounded };

inline constexpr std::int64_t kDefaultLCap = 2000;

/// Both sides of the trinomial Bailey lemma for a fixed M; n selects the variant.
std::pair<Series, Series> ab_lemma_sides(const TrinomialPair& pair, std::int64_t M, std::int64_t order,
                                         LhsLimit limit, std::int64_t L_cap = kDefaultLCap);

VerificationReport check_ab_lemma(const TrinomialPair& pair, std::int64_t M, std::int64_t order,
                                  LhsLimit limit = LhsLimit::m_cutoff, std::int64_t L_cap = kDefaultLCap);

/// (-q)_inf^2 / (q)_inf^2 known up to `order`.
Series corollary_prefactor(std::int64_t order);

/// 1/(1+q^(L+1)) - 1/(1+q^(L-1)) known up to `order`.
Series cor2_bracket(std::int64_t L, std::int64_t order);

std::pair<Series, Series> cor1_sides(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap);
std::pair<Series, Series> cor2_sides(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap);

VerificationReport check_cor1(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap = kDefaultLCap);
VerificationReport check_cor2(const TrinomialPair& pair, std::int64_t order, std::int64_t L_cap = kDefaultLCap);

/// Indexwise sum; both pairs must share n.
TrinomialPair sum_pairs(const TrinomialPair& a, const TrinomialPair& b);

}  // namespace qbailey
