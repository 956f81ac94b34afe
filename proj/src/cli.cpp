#include "qbailey/cli.hpp"

#include <chrono>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbailey/bailey.hpp"
#include "qbailey/catalog.hpp"
#include "qbailey/qspecial.hpp"

namespace qbailey {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::int64_t order = 200;
  std::int64_t L_max = 10;
  std::optional<std::int64_t> L;
  std::int64_t M = 5;
  std::optional<std::int64_t> M_max;
  std::int64_t L_cap = kDefaultLCap;
  std::string pair;
  std::optional<int> n;
  std::optional<int> ell;
  std::string lhs_limit = "M";
  std::string units = "q";
  std::string format = "text";
  bool timing = false;
};

Units units_of(const RunConfig& c) { return c.units == "t" ? Units::t : Units::q; }

// "builtin:NAME", "file:PATH", or a bare path / builtin name.
PairDocument resolve_document(const std::string& source) {
  if (source.empty()) throw UsageError("a pair source is required (--pair builtin:NAME or --pair file:PATH)");
  if (source.rfind("builtin:", 0) == 0) return builtin_document(source.substr(8));
  if (source.rfind("file:", 0) == 0) return load_pair_document_file(source.substr(5));
  try {
    return builtin_document(source);
  } catch (const Error&) {
    return load_pair_document_file(source);
  }
}

BinomialPair binomial_source(const RunConfig& c) {
  AnyPair any = instantiate(resolve_document(c.pair));
  if (!std::holds_alternative<BinomialPair>(any)) throw UsageError("this identity needs a binomial pair");
  auto pair = std::get<BinomialPair>(std::move(any));
  if (c.ell) {
    if (*c.ell < 0) throw UsageError("--ell must be nonnegative");
    pair.ell = *c.ell;
  }
  return pair;
}

TrinomialPair trinomial_source(const RunConfig& c) {
  AnyPair any = instantiate(resolve_document(c.pair));
  if (std::holds_alternative<TrinomialPair>(any)) {
    auto pair = std::get<TrinomialPair>(std::move(any));
    if (c.n && *c.n != pair.n) throw UsageError("--n disagrees with the trinomial pair's n");
    return pair;
  }
  if (!c.n) throw UsageError("a binomial source needs --n to build its trinomial image");
  return to_trinomial(binomial_source(c), *c.n);
}

json config_json(const RunConfig& c, const std::string& identity) {
  json j;
  j["identity"] = identity;
  j["pair"] = c.pair;
  j["order"] = c.order;
  if (c.n) j["n"] = *c.n;
  if (c.ell) j["ell"] = *c.ell;
  if (identity == "pair" || identity == "tripair" || identity == "lemma2") {
    if (c.L) {
      j["L"] = *c.L;
    } else {
      j["L_max"] = c.L_max;
    }
  }
  if (identity == "ab-lemma") {
    if (c.M_max) {
      j["M_max"] = *c.M_max;
    } else {
      j["M"] = c.M;
    }
    j["lhs_limit"] = c.lhs_limit;
  }
  if (identity == "ab-lemma" || identity == "cor1" || identity == "cor2") j["L_cap"] = c.L_cap;
  return j;
}

int exit_code_of(Outcome o) {
  switch (o) {
    case Outcome::pass: return exit_pass;
    case Outcome::fail: return exit_fail;
    case Outcome::insufficient_order: return exit_insufficient_order;
  }
  return exit_fail;
}

VerificationReport run_identity(const std::string& identity, const RunConfig& c) {
  const LhsLimit limit = c.lhs_limit == "order-bounded" ? LhsLimit::order_bounded : LhsLimit::m_cutoff;
  if (identity == "pair") return verify_binomial_pair(binomial_source(c), c.L.value_or(c.L_max), c.order);
  if (identity == "tripair") return verify_trinomial_pair(trinomial_source(c), c.L.value_or(c.L_max), c.order);
  if (identity == "lemma2") {
    const auto pair = binomial_source(c);
    const int n = c.n.value_or(0);
    if (c.L) return verify_lemma2(pair, n, *c.L, c.order);
    return verify_lemma2_range(pair, n, c.L_max, c.order);
  }
  if (identity == "ab-lemma") {
    const auto pair = trinomial_source(c);
    if (!c.M_max) return check_ab_lemma(pair, c.M, c.order, limit, c.L_cap);
    VerificationReport report;
    report.identity = "ab-lemma";
    report.parameters = {{"n", pair.n}, {"M_max", *c.M_max}, {"order", c.order}};
    for (std::int64_t M = 0; M <= *c.M_max; ++M)
      for (auto& r : check_ab_lemma(pair, M, c.order, limit, c.L_cap).checks) report.add(std::move(r));
    return report;
  }
  if (identity == "cor1" || identity == "cor2") {
    const auto pair = trinomial_source(c);
    const int needed = identity == "cor1" ? 0 : 1;
    if (pair.n != needed) {
      throw UsageError(identity + " needs a trinomial pair relative to n = " + std::to_string(needed));
    }
    return identity == "cor1" ? check_cor1(pair, c.order, c.L_cap) : check_cor2(pair, c.order, c.L_cap);
  }
  throw UsageError("unknown identity \"" + identity + "\"");
}

int cmd_verify(const std::string& identity, const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport report = run_identity(identity, c);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (c.format == "json") {
    json j;
    j["command"] = "verify";
    j["config"] = config_json(c, identity);
    j["verdict"] = to_string(report.outcome);
    j["checks"] = json::array();
    for (const auto& chk : report.checks) {
      json cj;
      cj["index"] = chk.index;
      cj["status"] = to_string(chk.status);
      if (chk.mismatch) {
        cj["mismatch"] = {{"exp_t", chk.mismatch->exp_t},
                          {"lhs", to_string(chk.mismatch->lhs)},
                          {"rhs", to_string(chk.mismatch->rhs)}};
      }
      j["checks"].push_back(std::move(cj));
    }
    if (c.timing) j["timing_ms"] = elapsed;
    out << j.dump(2) << "\n";
  } else {
    out << "verify " << identity << "  pair=" << c.pair << "  order=" << c.order << "\n";
    for (const auto& chk : report.checks) {
      out << "  index " << chk.index << ": " << to_string(chk.status);
      if (chk.mismatch) {
        out << " (first mismatch at t^" << chk.mismatch->exp_t << ": lhs " << to_string(chk.mismatch->lhs)
            << ", rhs " << to_string(chk.mismatch->rhs) << ")";
      }
      if (!chk.note.empty()) out << " (" << chk.note << ")";
      out << "\n";
    }
    out << "verdict: " << to_string(report.outcome) << "\n";
    if (c.timing) out << "timing_ms: " << elapsed << "\n";
  }
  return exit_code_of(report.outcome);
}

int cmd_tri(const std::string& def, std::int64_t B, std::int64_t A, const RunConfig& c, std::ostream& out) {
  if (!c.L) throw UsageError("--L is required");
  const auto L = *c.L;
  const int n = c.n.value_or(0);
  const Units u = units_of(c);
  std::vector<std::pair<std::string, std::string>> rows;
  int code = exit_pass;

  if (def == "eq1") {
    rows.emplace_back("eq1", to_string(trinomial_eq1(L, B, A), u));
  } else if (def == "T") {
    rows.emplace_back("T", to_string(t_n(n, L, A), u));
  } else if (def == "Q") {
    rows.emplace_back("Q", to_string(q_n(n, L, A, c.order), u));
  } else {
    const Series t = t_n(n, L, A);
    const Series q = q_n(n, L, A, c.order);
    const Series product = mul(q, poch_finite(q_arg, L));
    const auto window = product.order().value_or(c.order);
    const auto cmp = equal_to_order(product, t, window);
    rows.emplace_back("T", to_string(t, u));
    rows.emplace_back("Q", to_string(q, u));
    std::string status = "equal to order " + std::to_string(window);
    if (!cmp) {
      status = "differ at t^" + std::to_string(cmp.mismatch->exp_t);
      code = exit_fail;
    }
    rows.emplace_back("Q*(q)_L vs T", status);
  }

  if (c.format == "json") {
    json j;
    j["command"] = "tri";
    j["config"] = {{"def", def}, {"n", n}, {"L", L}, {"B", B}, {"A", A}, {"order", c.order}, {"units", c.units}};
    j["result"] = json::object();
    for (const auto& [k, v] : rows) j["result"][k] = v;
    out << j.dump(2) << "\n";
  } else if (rows.size() == 1) {
    out << rows[0].second << "\n";
  } else {
    for (const auto& [k, v] : rows) out << k << ": " << v << "\n";
  }
  return code;
}

std::string sequence_line(const std::string& label, const Series& s, Units u) {
  return label + " = " + to_string(s, u);
}

int cmd_catalog(const std::string& action, const std::string& name, std::optional<std::int64_t> alpha_index,
                std::optional<std::int64_t> beta_index, const RunConfig& c, std::ostream& out) {
  if (action == "list") {
    for (const auto& nm : builtin_names()) {
      const auto doc = builtin_document(nm);
      out << nm << "  " << (doc.kind == PairKind::binomial ? "binomial ell=" + std::to_string(doc.ell)
                                                           : "trinomial n=" + std::to_string(doc.n))
          << "\n";
    }
    return exit_pass;
  }
  const PairDocument doc = builtin_document(name);
  if (action == "export") {
    out << serialize(doc);
    return exit_pass;
  }

  const Units u = units_of(c);
  const AnyPair any = instantiate(doc);
  const bool binomial = std::holds_alternative<BinomialPair>(any);
  auto alpha = [&](std::int64_t i) {
    return binomial ? std::get<BinomialPair>(any).alpha(i) : std::get<TrinomialPair>(any).talpha(i);
  };
  auto beta = [&](std::int64_t i) {
    return binomial ? std::get<BinomialPair>(any).beta(i, c.order) : std::get<TrinomialPair>(any).tbeta(i, c.order);
  };
  auto beta_label = [&](std::int64_t i) {
    if (binomial && std::holds_alternative<ClosedBeta>(doc.beta))
      return describe_closed_beta(std::get<ClosedBeta>(doc.beta), i);
    return std::string(binomial ? "beta_" : "tbeta_") + std::to_string(i);
  };

  if (alpha_index || beta_index) {
    if (alpha_index) out << sequence_line((binomial ? "alpha_" : "talpha_") + std::to_string(*alpha_index), alpha(*alpha_index), u) << "\n";
    if (beta_index) out << sequence_line(beta_label(*beta_index), beta(*beta_index), u) << "\n";
    return exit_pass;
  }
  out << doc.name << "  " << (binomial ? "binomial ell=" + std::to_string(doc.ell) : "trinomial n=" + std::to_string(doc.n))
      << "\n";
  for (std::int64_t i = 0; i <= 6; ++i)
    out << "  " << sequence_line((binomial ? "alpha_" : "talpha_") + std::to_string(i), alpha(i), u) << "\n";
  return exit_pass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series toolkit for q-trinomial coefficients and Bailey pairs", "qbailey"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "working order in t-units (t = q^(1/2))")
        ->check(CLI::PositiveNumber);
    sub->add_option("--units", cfg.units, "exponent display units")->check(CLI::IsMember({"t", "q"}));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string def = "Q";
  std::int64_t B = 0, A = 0;
  auto* tri = app.add_subcommand("tri", "q-trinomial coefficients");
  tri->add_option("--def", def, "eq1 (j-sum), T, Q (s-sum) or both")->check(CLI::IsMember({"eq1", "T", "Q", "both"}));
  tri->add_option("--n", cfg.n, "0 or 1")->check(CLI::Range(0, 1));
  tri->add_option("--L", cfg.L, "L >= 0")->required()->check(CLI::NonNegativeNumber);
  tri->add_option("--B", B, "B (eq1 only)");
  tri->add_option("--A", A, "A");
  add_common(tri);

  std::string identity;
  auto* verify = app.add_subcommand("verify", "verify an identity on a truncated window");
  verify->add_option("identity", identity, "pair | tripair | lemma2 | ab-lemma | cor1 | cor2")
      ->required()
      ->check(CLI::IsMember({"pair", "tripair", "lemma2", "ab-lemma", "cor1", "cor2"}));
  verify->add_option("--pair", cfg.pair, "builtin:NAME or file:PATH")->required();
  verify->add_option("--n", cfg.n, "0 or 1")->check(CLI::Range(0, 1));
  verify->add_option("--ell", cfg.ell, "override the binomial pair's ell")->check(CLI::NonNegativeNumber);
  verify->add_option("--Lmax", cfg.L_max, "largest index checked")->check(CLI::NonNegativeNumber);
  verify->add_option("--L", cfg.L, "single index (pair, tripair, lemma2)")->check(CLI::NonNegativeNumber);
  verify->add_option("--M", cfg.M, "M of the trinomial Bailey lemma")->check(CLI::NonNegativeNumber);
  verify->add_option("--Mmax", cfg.M_max, "check every M in 0..Mmax")->check(CLI::NonNegativeNumber);
  verify->add_option("--lhs-limit", cfg.lhs_limit, "M or order-bounded")
      ->check(CLI::IsMember({"M", "order-bounded"}));
  verify->add_option("--Lcap", cfg.L_cap, "scan cap for infinite sums")->check(CLI::PositiveNumber);
  verify->add_flag("--timing", cfg.timing, "include wall-clock timing in the output");
  add_common(verify);

  std::string action, name;
  std::optional<std::int64_t> alpha_index, beta_index;
  auto* catalog = app.add_subcommand("catalog", "built-in Bailey pairs");
  catalog->add_option("action", action, "list | show | export")
      ->required()
      ->check(CLI::IsMember({"list", "show", "export"}));
  catalog->add_option("name", name, "builtin pair name");
  catalog->add_option("--alpha", alpha_index, "print one alpha entry")->check(CLI::NonNegativeNumber);
  catalog->add_option("--beta", beta_index, "print one beta entry")->check(CLI::NonNegativeNumber);
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (tri->parsed()) {
      cfg.command = "tri";
      return cmd_tri(def, B, A, cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(identity, cfg, out);
    }
    cfg.command = "catalog";
    if (action != "list" && name.empty()) throw UsageError("catalog " + action + " needs a pair name");
    return cmd_catalog(action, name, alpha_index, beta_index, cfg, out);
  } catch (const InsufficientOrder& e) {
    err << "insufficient order: " << e.what() << "\n";
    return exit_insufficient_order;
  } catch (const DivergenceError& e) {
    err << "no convergence within the window: " << e.what() << "\n";
    return exit_insufficient_order;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace qbailey
