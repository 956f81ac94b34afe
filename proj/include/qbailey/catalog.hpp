#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbailey/bailey.hpp"
#include "qbailey/series.hpp"

namespace qbailey {

/// One monomial pattern: index = modulus * j + offset contributes
/// sign * t^(exp_t[0] j^2 + exp_t[1] j + exp_t[2]) for jmin <= j <= jmax.
struct Branch {
  std::int64_t modulus = 1;
  std::int64_t offset = 0;
  std::optional<std::int64_t> jmin;
  std::optional<std::int64_t> jmax;
  int sign = 1;
  std::array<std::int64_t, 3> exp_t{0, 0, 0};

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Piecewise-quadratic monomial sequence. Matching branches add up.
struct SequenceSpec {
  std::vector<Branch> branches;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

/// (sign * t^k_t)_(count[0] * L + count[1])
struct PochFactor {
  int sign = 1;
  std::int64_t k_t = 2;
  std::array<std::int64_t, 2> count{0, 0};

  friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

/// beta_L = t^(p0 L^2 + p1 L + p2) * prod(num) / prod(den)
struct ClosedBeta {
  std::array<std::int64_t, 3> prefactor_t{0, 0, 0};
  std::vector<PochFactor> num;
  std::vector<PochFactor> den;

  friend bool operator==(const ClosedBeta&, const ClosedBeta&) = default;
};

struct DerivedBeta {
  friend bool operator==(const DerivedBeta&, const DerivedBeta&) = default;
};

enum class PairKind { binomial, trinomial };
enum class TbetaMode { from_corollary, s_sum };
enum class Parity { same, opposite };

/// Trinomial beta: either the corollary image of a named binomial pair, or
/// sum over s of the given parity relative to L of q^(s(s-n)/2) / ((q)_s (q)_(L-s)).
struct TbetaSpec {
  TbetaMode mode = TbetaMode::s_sum;
  Parity parity = Parity::same;
  std::string source;

  friend bool operator==(const TbetaSpec&, const TbetaSpec&) = default;
};

struct PairDocument {
  std::string name;
  PairKind kind = PairKind::binomial;
  int ell = 0;
  int n = 0;
  /// Absent only for trinomial documents whose tbeta comes from the corollary.
  std::optional<SequenceSpec> alpha;
  std::variant<DerivedBeta, ClosedBeta> beta;
  TbetaSpec tbeta;

  friend bool operator==(const PairDocument&, const PairDocument&) = default;
};

using AnyPair = std::variant<BinomialPair, TrinomialPair>;

Series alpha_eval(const SequenceSpec& spec, std::int64_t index);
Series closed_beta_eval(const ClosedBeta& beta, std::int64_t L, std::int64_t order);
/// Human-readable closed form at a given L, e.g. "1/(q)_6".
std::string describe_closed_beta(const ClosedBeta& beta, std::int64_t L);

/// Parses and validates a pair document. Throws ParseError.
PairDocument load_pair_document(std::string_view text);
PairDocument load_pair_document_file(const std::string& path);
std::string serialize(const PairDocument& doc);
/// Canonical text of a document: defaults filled in, fixed key order.
std::string normalize(std::string_view text);

/// Names accepted by builtin(): A1, A1-trinomial:n, A1-trinomial-as-printed:n,
/// AB-A2-trinomial:n and delta:ell.
std::vector<std::string> builtin_names();
PairDocument builtin_document(const std::string& name);
AnyPair builtin(const std::string& name);

AnyPair instantiate(const PairDocument& doc);

}  // namespace qbailey
