#include "qbailey/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbailey/qspecial.hpp"

namespace qbailey {

namespace {

using json = nlohmann::ordered_json;

// --- parsing ----------------------------------------------------------------

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what, field);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? std::string(key) : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

int as_sign(const json& v, const std::string& path) {
  const auto s = as_int(v, path);
  if (s != 1 && s != -1) fail(path, "sign must be 1 or -1");
  return static_cast<int>(s);
}

template <std::size_t N>
std::array<std::int64_t, N> as_int_array(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != N) fail(path, "expected an array of " + std::to_string(N) + " integers");
  std::array<std::int64_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = as_int(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

std::optional<std::int64_t> as_optional_int(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return as_int(*it, join(path, key));
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

SequenceSpec parse_sequence(const json& v, const std::string& path) {
  as_object(v, path);
  reject_unknown(v, path, {"branches"});
  const json& branches = require(v, path, "branches");
  const auto bpath = join(path, "branches");
  if (!branches.is_array()) fail(bpath, "expected an array");

  SequenceSpec spec;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto p = bpath + "[" + std::to_string(i) + "]";
    const json& b = as_object(branches[i], p);
    reject_unknown(b, p, {"modulus", "offset", "jmin", "jmax", "sign", "exp_t"});
    Branch br;
    br.modulus = as_int(require(b, p, "modulus"), join(p, "modulus"));
    if (br.modulus < 1) fail(join(p, "modulus"), "modulus must be at least 1");
    br.offset = as_int(require(b, p, "offset"), join(p, "offset"));
    br.jmin = as_optional_int(b, p, "jmin");
    br.jmax = as_optional_int(b, p, "jmax");
    if (br.jmin && br.jmax && *br.jmin > *br.jmax) fail(p, "jmin exceeds jmax");
    br.sign = as_sign(require(b, p, "sign"), join(p, "sign"));
    br.exp_t = as_int_array<3>(require(b, p, "exp_t"), join(p, "exp_t"));
    spec.branches.push_back(br);
  }
  return spec;
}

PochFactor parse_factor(const json& v, const std::string& path, bool denominator) {
  as_object(v, path);
  reject_unknown(v, path, {"sign", "k_t", "count"});
  PochFactor f;
  f.sign = as_sign(require(v, path, "sign"), join(path, "sign"));
  f.k_t = as_int(require(v, path, "k_t"), join(path, "k_t"));
  f.count = as_int_array<2>(require(v, path, "count"), join(path, "count"));
  const auto [u, c0] = f.count;
  if (u < 0 || c0 < 0) fail(join(path, "count"), "negative Pochhammer count reachable for some L >= 0");
  if (denominator && f.sign == 1 && f.k_t <= 0 && f.k_t % 2 == 0) {
    // factor i = -k_t/2 is (1 - 1); reachable once the count exceeds it.
    const auto zero_at = -f.k_t / 2;
    if (u > 0 || c0 > zero_at) fail(path, "denominator factor vanishes for some L >= 0");
  }
  return f;
}

ClosedBeta parse_closed_beta(const json& v, const std::string& path) {
  as_object(v, path);
  reject_unknown(v, path, {"prefactor_t", "num", "den"});
  ClosedBeta beta;
  if (auto it = v.find("prefactor_t"); it != v.end())
    beta.prefactor_t = as_int_array<3>(*it, join(path, "prefactor_t"));
  for (const char* key : {"num", "den"}) {
    auto it = v.find(key);
    if (it == v.end()) continue;
    const auto p = join(path, key);
    if (!it->is_array()) fail(p, "expected an array");
    auto& list = std::string(key) == "num" ? beta.num : beta.den;
    for (std::size_t i = 0; i < it->size(); ++i)
      list.push_back(parse_factor((*it)[i], p + "[" + std::to_string(i) + "]", std::string(key) == "den"));
  }
  return beta;
}

TbetaSpec parse_tbeta(const json& v, const std::string& path) {
  as_object(v, path);
  reject_unknown(v, path, {"mode", "parity", "source"});
  const json& mode = require(v, path, "mode");
  TbetaSpec spec;
  if (mode == "from-corollary") {
    spec.mode = TbetaMode::from_corollary;
    if (v.contains("parity")) fail(join(path, "parity"), "not allowed with mode from-corollary");
    const json& src = require(v, path, "source");
    if (!src.is_string()) fail(join(path, "source"), "expected a string");
    spec.source = src.get<std::string>();
  } else if (mode == "s-sum") {
    spec.mode = TbetaMode::s_sum;
    if (v.contains("source")) fail(join(path, "source"), "not allowed with mode s-sum");
    const json& parity = require(v, path, "parity");
    if (parity == "same") {
      spec.parity = Parity::same;
    } else if (parity == "opposite") {
      spec.parity = Parity::opposite;
    } else {
      fail(join(path, "parity"), "expected \"same\" or \"opposite\"");
    }
  } else {
    fail(join(path, "mode"), "expected \"from-corollary\" or \"s-sum\"");
  }
  return spec;
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// --- serialization ------------------------------------------------------------

json to_json(const SequenceSpec& spec) {
  json branches = json::array();
  for (const auto& b : spec.branches) {
    json j;
    j["modulus"] = b.modulus;
    j["offset"] = b.offset;
    j["jmin"] = b.jmin ? json(*b.jmin) : json(nullptr);
    j["jmax"] = b.jmax ? json(*b.jmax) : json(nullptr);
    j["sign"] = b.sign;
    j["exp_t"] = b.exp_t;
    branches.push_back(std::move(j));
  }
  json out;
  out["branches"] = std::move(branches);
  return out;
}

json to_json(const PochFactor& f) {
  json j;
  j["sign"] = f.sign;
  j["k_t"] = f.k_t;
  j["count"] = f.count;
  return j;
}

json to_json(const ClosedBeta& beta) {
  json j;
  j["prefactor_t"] = beta.prefactor_t;
  j["num"] = json::array();
  for (const auto& f : beta.num) j["num"].push_back(to_json(f));
  j["den"] = json::array();
  for (const auto& f : beta.den) j["den"].push_back(to_json(f));
  return j;
}

// Canonical key order used by normalize(), keyed by the enclosing field.
void canonical_order(json& v, const std::string& where) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> orders = {
      {"", {"name", "kind", "ell", "n", "alpha", "beta", "tbeta"}},
      {"alpha", {"branches"}},
      {"branch", {"modulus", "offset", "jmin", "jmax", "sign", "exp_t"}},
      {"beta", {"prefactor_t", "num", "den"}},
      {"factor", {"sign", "k_t", "count"}},
      {"tbeta", {"mode", "parity", "source"}},
  };
  if (!v.is_object()) return;
  auto it = std::find_if(orders.begin(), orders.end(), [&](const auto& o) { return o.first == where; });
  if (it == orders.end()) return;
  json sorted = json::object();
  for (const auto& key : it->second)
    if (v.contains(key)) sorted[key] = v[key];
  for (const auto& item : v.items())
    if (!sorted.contains(item.key())) sorted[item.key()] = item.value();
  v = std::move(sorted);
}

std::pair<std::string, std::int64_t> split_param(const std::string& name) {
  const auto colon = name.rfind(':');
  if (colon == std::string::npos) return {name, -1};
  const auto tail = name.substr(colon + 1);
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), ::isdigit)) return {name, -1};
  return {name.substr(0, colon), std::stoll(tail)};
}

SequenceSpec a1_alpha(std::int64_t modulus) {
  // L = m j (j >= 0 and j > 0), L = m j - 1 and L = m j + 1 with the
  // exponents 6j^2 -+ j and 6j^2 -+ 5j + 1 in q-units.
  return {{
      {modulus, 0, 0, std::nullopt, 1, {12, -2, 0}},
      {modulus, 0, 1, std::nullopt, 1, {12, 2, 0}},
      {modulus, -1, 1, std::nullopt, -1, {12, -10, 2}},
      {modulus, 1, 0, std::nullopt, -1, {12, 10, 2}},
  }};
}

SequenceSpec a2_trinomial_alpha() {
  return {{
      {6, -1, 1, std::nullopt, 1, {12, -2, 0}},
      {6, 1, 0, std::nullopt, 1, {12, 2, 0}},
      {6, -3, 1, std::nullopt, -1, {12, -10, 2}},
      {6, 3, 0, std::nullopt, -1, {12, 10, 2}},
  }};
}

Series s_sum_tbeta(int n, Parity parity, std::int64_t L, std::int64_t order) {
  Series total = Series::big_o(order);
  const std::int64_t start = parity == Parity::same ? L % 2 : (L + 1) % 2;
  for (std::int64_t s = start; s <= L; s += 2) {
    const std::int64_t lead = s * (s - n);
    if (lead > order) break;
    Series term = truncate(Series::monomial(1, lead), order);
    term = divide_by_poch(std::move(term), q_arg, s);
    term = divide_by_poch(std::move(term), q_arg, L - s);
    total = add(total, term);
  }
  return total;
}

std::string poch_text(int sign, std::int64_t k, std::int64_t count) {
  std::string base;
  if (k == 0) {
    base = "1";
  } else {
    base = to_string(Series::monomial(1, k), Units::q);
  }
  return "(" + std::string(sign < 0 ? "-" : "") + base + ")_" + std::to_string(count);
}

}  // namespace

Series alpha_eval(const SequenceSpec& spec, std::int64_t index) {
  Series total;
  for (const auto& b : spec.branches) {
    const auto d = index - b.offset;
    if (d % b.modulus != 0) continue;
    const auto j = d / b.modulus;
    if (b.jmin && j < *b.jmin) continue;
    if (b.jmax && j > *b.jmax) continue;
    const auto e = b.exp_t[0] * j * j + b.exp_t[1] * j + b.exp_t[2];
    total = add(total, Series::monomial(b.sign, e));
  }
  return total;
}

Series closed_beta_eval(const ClosedBeta& beta, std::int64_t L, std::int64_t order) {
  auto count_at = [L](const PochFactor& f) {
    const auto c = f.count[0] * L + f.count[1];
    if (c < 0) throw DomainError("negative Pochhammer count at L = " + std::to_string(L));
    return c;
  };
  const auto lead = beta.prefactor_t[0] * L * L + beta.prefactor_t[1] * L + beta.prefactor_t[2];
  Series value = Series::monomial(1, lead);
  for (const auto& f : beta.num) value = mul(value, poch_finite({f.sign, f.k_t}, count_at(f)));
  value = truncate(value, order);
  for (const auto& f : beta.den) value = divide_by_poch(std::move(value), {f.sign, f.k_t}, count_at(f));
  return value;
}

std::string describe_closed_beta(const ClosedBeta& beta, std::int64_t L) {
  std::string out;
  const auto lead = beta.prefactor_t[0] * L * L + beta.prefactor_t[1] * L + beta.prefactor_t[2];
  if (lead != 0) out += to_string(Series::monomial(1, lead), Units::q) + "*";
  auto product = [L](const std::vector<PochFactor>& fs) {
    std::string s;
    for (const auto& f : fs) s += poch_text(f.sign, f.k_t, f.count[0] * L + f.count[1]);
    return s.empty() ? std::string("1") : s;
  };
  out += product(beta.num);
  if (!beta.den.empty()) out += "/" + product(beta.den);
  return out;
}

PairDocument load_pair_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("parse error at line " + std::to_string(line) + ": " + e.what(), {}, line);
  }
  as_object(root, "document");

  PairDocument doc;
  const json& name = require(root, "", "name");
  if (!name.is_string()) fail("name", "expected a string");
  doc.name = name.get<std::string>();

  const json& kind = require(root, "", "kind");
  if (kind == "binomial") {
    doc.kind = PairKind::binomial;
    reject_unknown(root, "", {"name", "kind", "ell", "alpha", "beta"});
    doc.ell = static_cast<int>(as_int(require(root, "", "ell"), "ell"));
    if (doc.ell < 0) fail("ell", "ell must be nonnegative");
    doc.alpha = parse_sequence(require(root, "", "alpha"), "alpha");
    const json& beta = require(root, "", "beta");
    if (beta.is_string()) {
      if (beta != "derived") fail("beta", "expected \"derived\" or a closed form");
      doc.beta = DerivedBeta{};
    } else {
      doc.beta = parse_closed_beta(beta, "beta");
    }
  } else if (kind == "trinomial") {
    doc.kind = PairKind::trinomial;
    reject_unknown(root, "", {"name", "kind", "n", "alpha", "tbeta"});
    const auto n = as_int(require(root, "", "n"), "n");
    if (n != 0 && n != 1) fail("n", "n must be 0 or 1");
    doc.n = static_cast<int>(n);
    doc.tbeta = parse_tbeta(require(root, "", "tbeta"), "tbeta");
    if (doc.tbeta.mode == TbetaMode::from_corollary) {
      if (root.contains("alpha")) fail("alpha", "alpha is derived when tbeta comes from the corollary");
      PairDocument source;
      try {
        source = builtin_document(doc.tbeta.source);
      } catch (const Error&) {
        fail("tbeta.source", "unknown builtin pair \"" + doc.tbeta.source + "\"");
      }
      if (source.kind != PairKind::binomial) fail("tbeta.source", "source must be a binomial pair");
    } else {
      doc.alpha = parse_sequence(require(root, "", "alpha"), "alpha");
    }
  } else {
    fail("kind", "expected \"binomial\" or \"trinomial\"");
  }
  return doc;
}

PairDocument load_pair_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pair document " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_pair_document(buf.str());
}

std::string serialize(const PairDocument& doc) {
  json j;
  j["name"] = doc.name;
  if (doc.kind == PairKind::binomial) {
    j["kind"] = "binomial";
    j["ell"] = doc.ell;
    j["alpha"] = to_json(*doc.alpha);
    if (std::holds_alternative<DerivedBeta>(doc.beta)) {
      j["beta"] = "derived";
    } else {
      j["beta"] = to_json(std::get<ClosedBeta>(doc.beta));
    }
  } else {
    j["kind"] = "trinomial";
    j["n"] = doc.n;
    if (doc.alpha) j["alpha"] = to_json(*doc.alpha);
    json t;
    if (doc.tbeta.mode == TbetaMode::from_corollary) {
      t["mode"] = "from-corollary";
      t["source"] = doc.tbeta.source;
    } else {
      t["mode"] = "s-sum";
      t["parity"] = doc.tbeta.parity == Parity::same ? "same" : "opposite";
    }
    j["tbeta"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

std::string normalize(std::string_view text) {
  json root = json::parse(text.begin(), text.end());
  canonical_order(root, "");
  if (root.contains("alpha")) {
    auto& alpha = root["alpha"];
    if (alpha.contains("branches")) {
      for (auto& b : alpha["branches"]) {
        if (!b.contains("jmin")) b["jmin"] = nullptr;
        if (!b.contains("jmax")) b["jmax"] = nullptr;
        canonical_order(b, "branch");
      }
    }
    canonical_order(alpha, "alpha");
  }
  if (root.contains("beta") && root["beta"].is_object()) {
    auto& beta = root["beta"];
    if (!beta.contains("prefactor_t")) beta["prefactor_t"] = json::array({0, 0, 0});
    for (const char* key : {"num", "den"}) {
      if (!beta.contains(key)) beta[key] = json::array();
      for (auto& f : beta[key]) canonical_order(f, "factor");
    }
    canonical_order(beta, "beta");
  }
  if (root.contains("tbeta")) canonical_order(root["tbeta"], "tbeta");
  return root.dump(2) + "\n";
}

std::vector<std::string> builtin_names() {
  return {"A1",
          "A1-trinomial:0",
          "A1-trinomial:1",
          "A1-trinomial-as-printed:0",
          "A1-trinomial-as-printed:1",
          "AB-A2-trinomial:0",
          "AB-A2-trinomial:1",
          "delta:0",
          "delta:1",
          "delta:2"};
}

PairDocument builtin_document(const std::string& name) {
  const auto [base, param] = split_param(name);
  PairDocument doc;
  doc.name = name;
  if (base == "A1" && param < 0) {
    doc.kind = PairKind::binomial;
    doc.ell = 0;
    doc.alpha = a1_alpha(3);
    doc.beta = ClosedBeta{{0, 0, 0}, {}, {PochFactor{1, 2, {2, 0}}}};
    return doc;
  }
  if (base == "delta" && param >= 0) {
    doc.kind = PairKind::binomial;
    doc.ell = static_cast<int>(param);
    doc.alpha = SequenceSpec{{Branch{1, 0, 0, 0, 1, {0, 0, 0}}}};
    doc.beta = DerivedBeta{};
    return doc;
  }
  if (param == 0 || param == 1) {
    doc.kind = PairKind::trinomial;
    doc.n = static_cast<int>(param);
    if (base == "A1-trinomial") {
      doc.tbeta = {TbetaMode::from_corollary, Parity::same, "A1"};
      return doc;
    }
    if (base == "A1-trinomial-as-printed") {
      doc.alpha = a1_alpha(6);
      doc.tbeta = {TbetaMode::s_sum, Parity::same, {}};
      return doc;
    }
    if (base == "AB-A2-trinomial") {
      doc.alpha = a2_trinomial_alpha();
      doc.tbeta = {TbetaMode::s_sum, Parity::opposite, {}};
      return doc;
    }
  }
  throw Error("unknown builtin pair \"" + name + "\"");
}

AnyPair builtin(const std::string& name) { return instantiate(builtin_document(name)); }

AnyPair instantiate(const PairDocument& doc) {
  if (doc.kind == PairKind::binomial) {
    const SequenceSpec spec = *doc.alpha;
    ExactSequence alpha = [spec](std::int64_t i) { return alpha_eval(spec, i); };
    if (std::holds_alternative<DerivedBeta>(doc.beta)) return make_derived_pair(std::move(alpha), doc.ell, doc.name);
    const ClosedBeta closed = std::get<ClosedBeta>(doc.beta);
    TruncatedSequence beta = [closed](std::int64_t L, std::int64_t order) {
      return closed_beta_eval(closed, L, order);
    };
    return BinomialPair{memoize(std::move(alpha)), memoize(std::move(beta)), doc.ell, doc.name};
  }

  if (doc.tbeta.mode == TbetaMode::from_corollary) {
    const AnyPair source = builtin(doc.tbeta.source);
    if (!std::holds_alternative<BinomialPair>(source)) throw Error("corollary source must be a binomial pair");
    TrinomialPair pair = to_trinomial(std::get<BinomialPair>(source), doc.n);
    pair.label = doc.name;
    return pair;
  }

  const SequenceSpec spec = *doc.alpha;
  const int n = doc.n;
  const Parity parity = doc.tbeta.parity;
  ExactSequence talpha = [spec](std::int64_t i) { return alpha_eval(spec, i); };
  TruncatedSequence tbeta = [n, parity](std::int64_t L, std::int64_t order) {
    return s_sum_tbeta(n, parity, L, order);
  };
  return TrinomialPair{memoize(std::move(talpha)), memoize(std::move(tbeta)), n, doc.name};
}

}  // namespace qbailey
