#pragma once

// Scenario files: a keyed text format (TOML-style sections) or JSON,
// declaring a ring, named objects, and a list of tasks with optional
// expected results. A scenario parses and validates completely before any
// computation starts.

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invariants.hpp"
#include "report.hpp"

namespace extscope {

// --------------------------------------------------------------------------
// Parsed representation
// --------------------------------------------------------------------------

struct TValue {
  enum Kind { Str, Int, Bool } kind = Str;
  std::string s;
  long long i = 0;
  bool b = false;

  static TValue str(std::string v) { return TValue{Str, std::move(v), 0, false}; }
  static TValue integer(long long v) { return TValue{Int, {}, v, false}; }
  static TValue boolean(bool v) { return TValue{Bool, {}, 0, v}; }

  std::string show() const {
    switch (kind) {
      case Int: return std::to_string(i);
      case Bool: return b ? "true" : "false";
      default: return "\"" + s + "\"";
    }
  }
};

struct ScenarioTask {
  std::map<std::string, TValue> kv;
};

struct ScenarioDoc {
  std::string name;
  std::string ring;
  std::map<std::string, std::string> objects;  // name -> source text
  std::vector<ScenarioTask> tasks;
  std::optional<long long> degree_cap;
};

namespace detail {

inline std::string trimmed(const std::string& x) {
  size_t a = x.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  size_t b = x.find_last_not_of(" \t\r\n");
  return x.substr(a, b - a + 1);
}

inline bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return !std::isdigit(static_cast<unsigned char>(k[0]));
}

inline TValue parse_tvalue(const std::string& raw, size_t line) {
  std::string v = trimmed(raw);
  if (v.empty()) throw ParseError("line " + std::to_string(line) + ": empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw ParseError("line " + std::to_string(line) + ": unterminated string");
    return TValue::str(v.substr(1, v.size() - 2));
  }
  if (v == "true") return TValue::boolean(true);
  if (v == "false") return TValue::boolean(false);
  size_t p = (v[0] == '-' || v[0] == '+') ? 1 : 0;
  if (p < v.size() &&
      v.find_first_not_of("0123456789", p) == std::string::npos)
    return TValue::integer(std::stoll(v));
  throw ParseError("line " + std::to_string(line) + ": cannot read value '" +
                   v + "' (quote strings)");
}

// Strip a '#' comment that is not inside a quoted string.
inline std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

inline ScenarioDoc parse_scenario_toml(const std::string& text) {
  ScenarioDoc doc;
  enum Mode { Top, Objects, Task } mode = Top;
  std::istringstream in(text);
  std::string raw;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trimmed(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[objects]") {
      mode = Objects;
      continue;
    }
    if (line == "[[task]]") {
      mode = Task;
      doc.tasks.push_back({});
      continue;
    }
    if (line.front() == '[')
      throw ParseError("line " + std::to_string(lineno) +
                       ": unknown section " + line);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected key = value");
    std::string key = trimmed(line.substr(0, eq));
    if (!valid_key(key))
      throw ParseError("line " + std::to_string(lineno) + ": bad key '" +
                       key + "'");
    TValue val = parse_tvalue(line.substr(eq + 1), lineno);
    switch (mode) {
      case Top:
        if (key == "name" && val.kind == TValue::Str) doc.name = val.s;
        else if (key == "ring" && val.kind == TValue::Str) doc.ring = val.s;
        else if (key == "description") { /* informational */ }
        else if (key == "degree_cap" && val.kind == TValue::Int)
          doc.degree_cap = val.i;
        else
          throw ParseError("line " + std::to_string(lineno) +
                           ": unknown top-level key '" + key + "'");
        break;
      case Objects:
        if (val.kind != TValue::Str)
          throw ParseError("line " + std::to_string(lineno) +
                           ": object sources must be strings");
        if (doc.objects.count(key))
          throw ParseError("line " + std::to_string(lineno) +
                           ": duplicate object '" + key + "'");
        doc.objects[key] = val.s;
        break;
      case Task:
        if (doc.tasks.back().kv.count(key))
          throw ParseError("line " + std::to_string(lineno) +
                           ": duplicate task key '" + key + "'");
        doc.tasks.back().kv[key] = val;
        break;
    }
  }
  return doc;
}

inline ScenarioDoc parse_scenario_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("JSON scenario: ") + e.what());
  }
  auto to_tvalue = [](const Json& v) {
    if (v.is_string()) return TValue::str(v.get<std::string>());
    if (v.is_boolean()) return TValue::boolean(v.get<bool>());
    if (v.is_number_integer()) return TValue::integer(v.get<long long>());
    throw ParseError("JSON scenario: values must be strings, booleans or "
                     "integers");
  };
  ScenarioDoc doc;
  if (!j.is_object()) throw ParseError("JSON scenario: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "name") doc.name = it.value().get<std::string>();
    else if (key == "ring") doc.ring = it.value().get<std::string>();
    else if (key == "description") { /* informational */ }
    else if (key == "degree_cap") doc.degree_cap = it.value().get<long long>();
    else if (key == "objects") {
      for (auto ot = it.value().begin(); ot != it.value().end(); ++ot)
        doc.objects[ot.key()] = ot.value().get<std::string>();
    } else if (key == "tasks") {
      for (const Json& t : it.value()) {
        ScenarioTask task;
        for (auto tt = t.begin(); tt != t.end(); ++tt)
          task.kv[tt.key()] = to_tvalue(tt.value());
        doc.tasks.push_back(std::move(task));
      }
    } else {
      throw ParseError("JSON scenario: unknown key '" + key + "'");
    }
  }
  return doc;
}

// --------------------------------------------------------------------------
// Task catalogue: known operations, their required and allowed keys.
// --------------------------------------------------------------------------

struct OpSpec {
  std::set<std::string> required;
  std::set<std::string> allowed;  // includes required
};

inline const std::map<std::string, OpSpec>& op_catalogue() {
  auto make = [](std::set<std::string> req, std::set<std::string> extra) {
    OpSpec s;
    s.required = req;
    s.allowed = req;
    s.allowed.insert("op");
    s.allowed.insert("degree_cap");
    for (auto& k : extra) s.allowed.insert(k);
    return s;
  };
  static const std::map<std::string, OpSpec> table = {
      {"ext", make({"module", "i"},
                   {"other", "expect_zero", "expect_mu", "expect_ann",
                    "expect_hilbert", "expect_dim"})},
      {"iterated_ext", make({"module", "path"},
                            {"other", "expect_zero", "expect_mu",
                             "expect_ann", "expect_hilbert", "expect_dim"})},
      {"resolve", make({"module"},
                       {"window", "expect_ranks", "expect_complete"})},
      {"invariants",
       make({"module"},
            {"window", "expect_betti", "expect_pd", "expect_depth",
             "expect_grade", "expect_dim", "expect_mu", "expect_ann",
             "expect_hilbert", "expect_cm", "expect_perfect",
             "expect_quasi_perfect", "expect_ext_sup", "expect_finite_pd"})},
      {"eass", make({"module"},
                    {"window", "expect_periodic", "expect_period",
                     "expect_start", "expect_truncated"})},
      {"min_primes", make({"ideal"}, {"expect_primes"})},
      {"ass", make({"ideal"},
                   {"expect_primes", "expect_contains", "expect_equals"})},
      {"gamma", make({"module"}, {"upto", "expect_ideal", "expect_rad_ann"})},
      {"hann", make({"module"}, {"upto", "expect_ideal", "expect_rad_ann"})},
      {"ann", make({"module"}, {"expect_ideal"})},
      {"radical_member", make({"ideal", "members"}, {"expect"})},
      {"shift", make({"ideal", "i"}, {"expect_match"})},
      {"dim_formula", make({"module"},
                           {"expect_hypothesis", "expect_conclusion",
                            "expect_supp_equal", "expect_bounds"})},
      {"support_check", make({"module"}, {"other", "expect_equal"})},
      {"gen_count", make({"module"},
                         {"expect_top_matches", "expect_shape", "expect_pd",
                          "expect_betti"})},
      {"depth", make({"module"}, {"expect"})},
      {"grade", make({"module"}, {"expect"})},
      {"dim", make({"module"}, {"expect"})},
      {"mu", make({"module"}, {"expect"})},
      {"hilbert", make({"module"}, {"expect"})},
  };
  return table;
}

inline void validate_tasks(const ScenarioDoc& doc) {
  for (size_t t = 0; t < doc.tasks.size(); ++t) {
    const auto& kv = doc.tasks[t].kv;
    auto tag = [&] { return "task " + std::to_string(t + 1); };
    auto op_it = kv.find("op");
    if (op_it == kv.end() || op_it->second.kind != TValue::Str)
      throw ParseError(tag() + ": missing op");
    auto spec_it = op_catalogue().find(op_it->second.s);
    if (spec_it == op_catalogue().end())
      throw ParseError(tag() + ": unknown op '" + op_it->second.s + "'");
    const OpSpec& spec = spec_it->second;
    for (const auto& [key, val] : kv)
      if (!spec.allowed.count(key))
        throw ParseError(tag() + ": key '" + key + "' does not apply to op '" +
                         op_it->second.s + "'");
    for (const auto& req : spec.required)
      if (!kv.count(req))
        throw ParseError(tag() + ": op '" + op_it->second.s +
                         "' needs key '" + req + "'");
  }
}

// --------------------------------------------------------------------------
// Small expected-value parsers
// --------------------------------------------------------------------------

inline std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  for (const auto& piece : split_top_level(s, ',')) {
    std::string p = trimmed(piece);
    if (p.empty()) throw ParseError("empty entry in integer list '" + s + "'");
    out.push_back(std::stoll(p));
  }
  return out;
}

// One-variable Laurent polynomial in t with integer coefficients.
class LaurentParser {
 public:
  explicit LaurentParser(const std::string& s) : s_(s) {}

  Laurent parse() {
    Laurent l = expr();
    skip();
    if (pos_ != s_.size())
      throw ParseError("series: trailing input at '" + s_.substr(pos_) + "'");
    return l;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Laurent expr() {
    bool neg = false;
    char c = peek();
    if (c == '-') { neg = true; ++pos_; }
    else if (c == '+') ++pos_;
    Laurent acc = term();
    if (neg) acc = negate(acc);
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      Laurent t = term();
      if (c == '-') t = negate(t);
      for (const auto& [e, a] : t) lp_add_term(acc, e, a);
    }
  }

  Laurent term() {
    Laurent acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = lp_mul(acc, factor());
      } else if (c == 't' || c == '(' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        acc = lp_mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Laurent factor() {
    Laurent b = base();
    if (peek() == '^') {
      ++pos_;
      long long e = integer();
      if (e < 0) throw ParseError("series: negative exponent on a factor");
      Laurent acc{{0, mpz_class(1)}};
      for (long long k = 0; k < e; ++k) acc = lp_mul(acc, b);
      return acc;
    }
    return b;
  }

  Laurent base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Laurent l = expr();
      if (peek() != ')') throw ParseError("series: missing ')'");
      ++pos_;
      return l;
    }
    if (c == 't') {
      ++pos_;
      // A bare power of t takes its (possibly negative) exponent here, so
      // only genuine polynomial factors go through the repeated-product path.
      if (peek() == '^') {
        ++pos_;
        return Laurent{{integer(), mpz_class(1)}};
      }
      return Laurent{{1, mpz_class(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Laurent l;
      lp_add_term(l, 0, mpz_class(static_cast<long>(integer())));
      return l;
    }
    throw ParseError(std::string("series: unexpected character '") + c + "'");
  }

  long long integer() {
    skip();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (digits == pos_) throw ParseError("series: expected an integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  static Laurent negate(const Laurent& l) {
    Laurent out;
    for (const auto& [e, a] : l) out[e] = -a;
    return out;
  }
};

// "numer" or "numer/(1-t)^a*(1-t^2)^b"-style series text.
inline HilbertSeries hs_parse(const std::string& s) {
  auto parts = split_top_level(s, '/');
  if (parts.empty() || parts.size() > 2)
    throw ParseError("series '" + s + "': expected numer or numer/denom");
  HilbertSeries hs;
  hs.numer = LaurentParser(trimmed(parts[0])).parse();
  if (parts.size() == 2) {
    for (const auto& fpiece : split_top_level(trimmed(parts[1]), '*')) {
      std::string f = trimmed(fpiece);
      long long power = 1;
      size_t caret = f.rfind('^');
      if (caret != std::string::npos && caret > 0 && f[caret - 1] == ')') {
        power = std::stoll(trimmed(f.substr(caret + 1)));
        f = trimmed(f.substr(0, caret));
      }
      Laurent l = LaurentParser(f).parse();
      // must be exactly 1 - t^w
      long long w = 0;
      bool shape = l.size() == 2 && l.count(0) && l.at(0) == 1;
      if (shape)
        for (const auto& [e, a] : l)
          if (e != 0) { w = e; shape = (a == -1 && e >= 1); }
      if (!shape)
        throw ParseError("series '" + s +
                         "': denominator factors must look like (1-t^w)");
      for (long long k = 0; k < power; ++k) hs.denom.push_back(w);
    }
  }
  return hs;
}

// "(x); (y, z)" -> set of variable-index primes.
template <class F>
std::set<VarPrime> parse_prime_list(const PolyRing<F>& R,
                                    const std::string& s) {
  std::set<VarPrime> out;
  for (const auto& piece : split_top_level(s, ';')) {
    std::string p = trimmed(piece);
    if (p.empty()) continue;
    if (p.size() < 2 || p.front() != '(' || p.back() != ')')
      throw ParseError("prime list: expected '(vars)' but got '" + p + "'");
    VarPrime prime;
    std::string inner = trimmed(p.substr(1, p.size() - 2));
    if (!inner.empty() && inner != "0") {
      for (const auto& vpiece : split_top_level(inner, ',')) {
        std::string v = trimmed(vpiece);
        std::vector<int> idx = resolve_ident(R, v);
        if (idx.size() != 1)
          throw ParseError("prime list: '" + v + "' is not a variable");
        prime.push_back(idx[0]);
      }
    }
    std::sort(prime.begin(), prime.end());
    out.insert(prime);
  }
  return out;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Outcomes
// --------------------------------------------------------------------------

struct TaskOutcome {
  size_t index = 0;
  std::string op;
  std::string target;
  std::string level = "exact";  // or "invariants"
  bool checked = false;         // any expectations present
  bool pass = true;
  std::vector<std::string> mismatches;  // "key: computed X, expected Y"
  std::vector<std::string> warnings;
  Json data;  // computed values
  double ms = 0.0;
};

struct ScenarioReport {
  std::string name;
  std::string ring;
  bool all_pass = true;
  std::vector<TaskOutcome> tasks;
};

namespace detail {

template <class F>
struct ScenarioObject {
  enum Kind { Cyclic, IdealM, Free, Zero, Coker } kind = Cyclic;
  std::vector<Poly<F>> gens;  // for Cyclic/IdealM
  PresentedModule<F> module;
};

// "cyclic: ...", "ideal: ...", "free: n", "0", "coker(tw,..): (col)|(col)",
// or a bare generator list meaning the cyclic quotient by those generators.
template <class F>
ScenarioObject<F> build_object(const PolyRing<F>& R, const std::string& src,
                               const std::string& name,
                               const GBOptions& opts) {
  ScenarioObject<F> obj;
  std::string body = trimmed(src);
  if (body == "0") {
    obj.kind = ScenarioObject<F>::Zero;
    obj.module = zero_module(R);
    return obj;
  }
  size_t colon = body.find(':');
  std::string head = colon == std::string::npos ? "" : trimmed(body.substr(0, colon));
  std::string rest = colon == std::string::npos ? body : trimmed(body.substr(colon + 1));
  if (head.empty()) {
    obj.kind = ScenarioObject<F>::Cyclic;
    obj.gens = parse_poly_list(R, body);
    obj.module = cyclic_module(R, obj.gens, name);
    return obj;
  }
  if (head == "cyclic") {
    obj.kind = ScenarioObject<F>::Cyclic;
    obj.gens = parse_poly_list(R, rest);
    obj.module = cyclic_module(R, obj.gens, name);
    return obj;
  }
  if (head == "ideal") {
    obj.kind = ScenarioObject<F>::IdealM;
    obj.gens = parse_poly_list(R, rest);
    obj.module = ideal_module(R, obj.gens, name, opts);
    return obj;
  }
  if (head == "free") {
    obj.kind = ScenarioObject<F>::Free;
    long long rank = std::stoll(trimmed(rest));
    if (rank < 0) throw ParseError("object " + name + ": negative rank");
    obj.module = free_presented(R, FreeModule::free_of_rank(
                                       static_cast<size_t>(rank)), name);
    return obj;
  }
  if (head.rfind("coker", 0) == 0) {
    std::string tw = trimmed(head.substr(5));
    if (tw.size() < 2 || tw.front() != '(' || tw.back() != ')')
      throw ParseError("object " + name + ": coker needs (twists)");
    FreeModule f0;
    for (long long t : parse_int_list(tw.substr(1, tw.size() - 2)))
      f0.twists.push_back(t);
    std::vector<Vec<F>> cols;
    for (const auto& cpiece : split_top_level(rest, '|')) {
      std::string c = trimmed(cpiece);
      if (c.size() < 2 || c.front() != '(' || c.back() != ')')
        throw ParseError("object " + name + ": columns look like (f, g)");
      Vec<F> col;
      for (const auto& epiece :
           split_top_level(c.substr(1, c.size() - 2), ','))
        col.push_back(parse_poly(R, trimmed(epiece)));
      if (col.size() != f0.rank())
        throw ParseError("object " + name + ": column arity mismatch");
      cols.push_back(std::move(col));
    }
    obj.kind = ScenarioObject<F>::Coker;
    obj.module = coker_module(
        R, map_from_columns(R, f0, cols, std::nullopt, "coker"), name);
    return obj;
  }
  throw ParseError("object " + name + ": unknown form '" + head + "'");
}

// --------------------------------------------------------------------------
// Expectation helpers: each records a mismatch line on failure.
// --------------------------------------------------------------------------

struct Expect {
  const std::map<std::string, TValue>& kv;
  TaskOutcome& out;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  const TValue& get(const std::string& key) const { return kv.at(key); }

  void judge(const std::string& key, bool ok, const std::string& computed,
             const std::string& expected) {
    out.checked = true;
    if (!ok) {
      out.pass = false;
      out.mismatches.push_back(key + ": computed " + computed +
                               ", expected " + expected);
    }
  }

  void boolean(const std::string& key, bool actual) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Bool)
      throw ParseError(key + " wants true or false");
    judge(key, actual == get(key).b, actual ? "true" : "false",
          get(key).show());
  }

  void integer(const std::string& key, long long actual) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Int)
      throw ParseError(key + " wants an integer");
    judge(key, actual == get(key).i, std::to_string(actual),
          get(key).show());
  }

  // integer with "inf" accepted as text
  void int_or_inf(const std::string& key, long long actual) {
    if (!has(key)) return;
    const TValue& v = get(key);
    if (v.kind == TValue::Str && v.s == "inf") {
      judge(key, actual == static_cast<long long>(kInfinity),
            extscope::int_or_inf(static_cast<int>(
                std::min<long long>(actual, kInfinity))),
            "inf");
      return;
    }
    if (v.kind != TValue::Int)
      throw ParseError(key + " wants an integer or \"inf\"");
    judge(key, actual == v.i, std::to_string(actual), v.show());
  }

  void int_list(const std::string& key, const std::vector<size_t>& actual) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Str)
      throw ParseError(key + " wants a string like \"1, 2, 1\"");
    std::vector<long long> want = parse_int_list(get(key).s);
    std::vector<long long> got(actual.begin(), actual.end());
    std::ostringstream g;
    for (size_t k = 0; k < got.size(); ++k)
      g << (k ? ", " : "") << got[k];
    judge(key, got == want, "(" + g.str() + ")", get(key).show());
  }

  template <class F>
  void ideal(const std::string& key, const PolyRing<F>& R,
             const Ideal<F>& actual, const GBOptions& opts) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Str)
      throw ParseError(key + " wants a string like \"(x, y)\"");
    Ideal<F> want = make_ideal(R, parse_poly_list(R, get(key).s));
    judge(key, ideal_equal(actual, want, opts), ideal_str(actual),
          get(key).show());
  }

  void series(const std::string& key, const HilbertSeries& actual) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Str)
      throw ParseError(key + " wants a series string");
    HilbertSeries want = hs_parse(get(key).s);
    judge(key, hs_equal(actual, want), hs_str(actual), get(key).show());
  }

  template <class F>
  void primes(const std::string& key, const PolyRing<F>& R,
              const std::vector<VarPrime>& actual) {
    if (!has(key)) return;
    if (get(key).kind != TValue::Str)
      throw ParseError(key + " wants a string like \"(x); (y, z)\"");
    std::set<VarPrime> want = parse_prime_list(R, get(key).s);
    std::set<VarPrime> got(actual.begin(), actual.end());
    std::ostringstream shown;
    for (size_t k = 0; k < actual.size(); ++k)
      shown << (k ? "; " : "") << prime_str(R, actual[k]);
    judge(key, got == want, shown.str(), get(key).show());
  }
};

template <class F>
class ScenarioRunner {
 public:
  ScenarioRunner(F field, const ScenarioDoc& doc) : doc_(doc) {
    ring_ = ring_from_text(field, parse_ring_text(doc.ring));
    base_opts_ = GBOptions{};
    if (doc.degree_cap) base_opts_.cap = *doc.degree_cap;
    for (const auto& [name, src] : doc.objects)
      objects_.emplace(name, build_object(ring_, src, name, base_opts_));
  }

  ScenarioReport run() {
    ScenarioReport rep;
    rep.name = doc_.name;
    rep.ring = ring_str(ring_);
    for (size_t t = 0; t < doc_.tasks.size(); ++t) {
      auto t0 = std::chrono::steady_clock::now();
      TaskOutcome out = run_task(t);
      out.ms = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
      rep.all_pass = rep.all_pass && out.pass;
      rep.tasks.push_back(std::move(out));
    }
    return rep;
  }

 private:
  const ScenarioDoc& doc_;
  PolyRing<F> ring_;
  GBOptions base_opts_;
  std::map<std::string, ScenarioObject<F>> objects_;

  const TValue* find(const std::map<std::string, TValue>& kv,
                     const std::string& key) const {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  }

  // Object lookup with inline fallback: a value that names no declared
  // object is treated as an inline source.
  ScenarioObject<F> resolve_object(const std::string& src) const {
    auto it = objects_.find(src);
    if (it != objects_.end()) return it->second;
    return build_object(ring_, src, src, base_opts_);
  }

  Ideal<F> resolve_ideal(const ScenarioObject<F>& obj,
                         const std::string& src) const {
    if (obj.kind != ScenarioObject<F>::Cyclic &&
        obj.kind != ScenarioObject<F>::IdealM)
      throw UsageError("'" + src + "' has no generator list to use as an "
                       "ideal");
    return make_ideal(ring_, obj.gens);
  }

  TaskOutcome run_task(size_t index) {
    const auto& kv = doc_.tasks[index].kv;
    TaskOutcome out;
    out.index = index + 1;
    out.op = kv.at("op").s;
    GBOptions opts = base_opts_;
    if (const TValue* c = find(kv, "degree_cap")) opts.cap = c->i;
    Expect ex{kv, out};

    auto module_arg = [&](const std::string& key) {
      const TValue* v = find(kv, key);
      if (!v || v->kind != TValue::Str)
        throw ParseError("op " + out.op + ": key '" + key +
                         "' wants an object name");
      out.target = v->s;
      return resolve_object(v->s);
    };
    auto int_arg = [&](const std::string& key, long long dflt) {
      const TValue* v = find(kv, key);
      if (!v) return dflt;
      if (v->kind != TValue::Int)
        throw ParseError("op " + out.op + ": key '" + key +
                         "' wants an integer");
      return v->i;
    };
    const long long nv = static_cast<long long>(ring_.nvars());
    PresentedModule<F> RR = detail::ring_as_module(ring_);

    if (out.op == "ext" || out.op == "iterated_ext") {
      ScenarioObject<F> obj = module_arg("module");
      PresentedModule<F> other =
          find(kv, "other") ? resolve_object(kv.at("other").s).module : RR;
      PresentedModule<F> e;
      if (out.op == "ext") {
        e = ext_module(obj.module, other, int_arg("i", 0), opts);
      } else {
        std::vector<long long> path = parse_int_list(kv.at("path").s);
        e = iterated_ext(obj.module, other, path, opts);
      }
      bool zero = module_is_zero(e);
      out.data["zero"] = zero;
      out.data["mu"] = mu(e);
      Ideal<F> a = annihilator(e, opts);
      out.data["ann"] = js_ideal(a);
      HilbertSeries h = hilbert_series(e, opts);
      out.data["hilbert"] = hs_str(h);
      out.data["module"] = js_module(e, opts);
      ex.boolean("expect_zero", zero);
      ex.integer("expect_mu", static_cast<long long>(mu(e)));
      ex.template ideal<F>("expect_ann", ring_, a, opts);
      ex.series("expect_hilbert", h);
      if (ex.has("expect_dim"))
        ex.integer("expect_dim", module_dimension(e, opts));
    } else if (out.op == "resolve") {
      ScenarioObject<F> obj = module_arg("module");
      long long window = int_arg("window", nv + 1);
      FreeComplex<F> res = free_resolution(ring_, obj.module.pres, window, opts);
      std::vector<size_t> ranks = complex_ranks(res);
      out.data["complex"] = js_complex(res);
      if (!res.complete)
        out.warnings.push_back("resolution truncated at the window");
      ex.int_list("expect_ranks", ranks);
      ex.boolean("expect_complete", res.complete);
    } else if (out.op == "invariants") {
      ScenarioObject<F> obj = module_arg("module");
      InvariantReport<F> rep = compute_invariants(obj.module, opts);
      out.data = js_invariants(rep);
      if (!rep.resolution_complete)
        out.warnings.push_back("resolution truncated at the window");
      ex.int_list("expect_betti", rep.betti);
      ex.int_or_inf("expect_pd", rep.pd);
      ex.int_or_inf("expect_depth", rep.depth);
      ex.int_or_inf("expect_grade", rep.grade);
      ex.integer("expect_dim", rep.dim);
      ex.integer("expect_mu", static_cast<long long>(rep.mu));
      ex.template ideal<F>("expect_ann", ring_, rep.ann, opts);
      ex.series("expect_hilbert", rep.hilbert);
      ex.boolean("expect_cm", rep.cohen_macaulay);
      ex.boolean("expect_perfect", rep.perfect);
      ex.boolean("expect_quasi_perfect", rep.quasi_perfect);
      ex.integer("expect_ext_sup", rep.ext_sup);
      ex.boolean("expect_finite_pd", rep.finite_pd);
    } else if (out.op == "eass") {
      ScenarioObject<F> obj = module_arg("module");
      EassReport<F> rep =
          eass_experiment(obj.module, int_arg("window", 8), opts);
      out.data = js_eass(rep);
      if (rep.truncated)
        out.warnings.push_back("resolution truncated at the window");
      ex.boolean("expect_periodic", rep.periodic);
      ex.integer("expect_period", rep.period);
      ex.integer("expect_start", rep.start);
      ex.boolean("expect_truncated", rep.truncated);
    } else if (out.op == "min_primes") {
      ScenarioObject<F> obj = module_arg("ideal");
      Ideal<F> I = resolve_ideal(obj, out.target);
      std::vector<VarPrime> mp = monomial_minimal_primes(I);
      out.data["min_primes"] = js_primes(ring_, mp);
      ex.template primes<F>("expect_primes", ring_, mp);
    } else if (out.op == "ass") {
      ScenarioObject<F> obj = module_arg("ideal");
      Ideal<F> I = resolve_ideal(obj, out.target);
      AssReport rep = ass_oracle(I, opts);
      out.data = js_ass_report(ring_, rep);
      ex.template primes<F>("expect_primes", ring_, rep.union_min);
      ex.boolean("expect_contains", rep.contains_ass);
      ex.boolean("expect_equals", rep.equals_ass);
    } else if (out.op == "gamma" || out.op == "hann" || out.op == "ann") {
      ScenarioObject<F> obj = module_arg("module");
      Ideal<F> got = out.op == "ann"
                         ? annihilator(obj.module, opts)
                         : (out.op == "gamma"
                                ? gamma_ideal(obj.module, int_arg("upto", nv),
                                              opts)
                                : hann_ideal(obj.module, int_arg("upto", nv),
                                             opts));
      out.data["ideal"] = js_ideal(got);
      ex.template ideal<F>("expect_ideal", ring_, got, opts);
      if (ex.has("expect_rad_ann"))
        ex.boolean("expect_rad_ann",
                   radical_ideal_equal(got, annihilator(obj.module, opts),
                                       opts));
    } else if (out.op == "radical_member") {
      ScenarioObject<F> obj = module_arg("ideal");
      Ideal<F> I = resolve_ideal(obj, out.target);
      bool all = true;
      Json per = Json::array();
      for (const auto& f : parse_poly_list(ring_, kv.at("members").s)) {
        bool in = radical_member(I, f, opts);
        Json one;
        one["element"] = poly_str(ring_, f);
        one["in_radical"] = in;
        per.push_back(one);
        all = all && in;
      }
      out.data["members"] = per;
      ex.boolean("expect", all);
    } else if (out.op == "shift") {
      ScenarioObject<F> obj = module_arg("ideal");
      Ideal<F> I = resolve_ideal(obj, out.target);
      ShiftCheckReport<F> rep = ext_shift_check(I, int_arg("i", 1), opts);
      out.level = "invariants";
      out.data = js_shift_check(rep);
      ex.boolean("expect_match", rep.match);
    } else if (out.op == "dim_formula") {
      ScenarioObject<F> obj = module_arg("module");
      DimFormulaReport<F> rep = dim_formula_check(obj.module, opts);
      out.data = js_dim_formula(rep);
      ex.boolean("expect_hypothesis", rep.codim_hypothesis);
      ex.boolean("expect_conclusion", rep.conclusion);
      ex.boolean("expect_supp_equal", rep.supp_equal);
      ex.boolean("expect_bounds", rep.bounds_hold);
    } else if (out.op == "support_check") {
      ScenarioObject<F> obj = module_arg("module");
      PresentedModule<F> other =
          find(kv, "other") ? resolve_object(kv.at("other").s).module : RR;
      SupportCheckReport<F> rep =
          homological_support_check(obj.module, other, opts);
      out.data = js_support_check(rep);
      ex.boolean("expect_equal", rep.equal);
    } else if (out.op == "gen_count") {
      ScenarioObject<F> obj = module_arg("module");
      GenCountReport<F> rep = generator_count_check(obj.module, opts);
      out.data = js_gen_count(rep);
      if (!rep.note.empty()) out.warnings.push_back(rep.note);
      ex.boolean("expect_top_matches", rep.top_matches);
      ex.boolean("expect_shape", rep.hilbert_burch_shape);
      ex.int_or_inf("expect_pd", rep.pd);
      ex.int_list("expect_betti", rep.betti);
    } else if (out.op == "depth" || out.op == "grade") {
      ScenarioObject<F> obj = module_arg("module");
      int v = out.op == "depth" ? depth_of(obj.module, opts)
                                : grade_of(obj.module, opts);
      out.data[out.op] = js_int_or_inf(v);
      ex.int_or_inf("expect", v);
    } else if (out.op == "dim") {
      ScenarioObject<F> obj = module_arg("module");
      long long v = module_dimension(obj.module, opts);
      out.data["dim"] = v;
      ex.integer("expect", v);
    } else if (out.op == "mu") {
      ScenarioObject<F> obj = module_arg("module");
      out.data["mu"] = mu(obj.module);
      ex.integer("expect", static_cast<long long>(mu(obj.module)));
    } else if (out.op == "hilbert") {
      ScenarioObject<F> obj = module_arg("module");
      HilbertSeries h = hilbert_series(obj.module, opts);
      out.data["hilbert"] = hs_str(h);
      ex.series("expect", h);
    } else {
      throw InternalError("task dispatch missed op '" + out.op + "'");
    }
    return out;
  }
};

}  // namespace detail

// --------------------------------------------------------------------------
// Entry points
// --------------------------------------------------------------------------

inline ScenarioDoc parse_scenario_text(const std::string& text,
                                       const std::string& path_hint = {}) {
  std::string body = detail::trimmed(text);
  bool looks_json = !body.empty() && body.front() == '{';
  if (path_hint.size() > 5 &&
      path_hint.compare(path_hint.size() - 5, 5, ".json") == 0)
    looks_json = true;
  ScenarioDoc doc =
      looks_json ? detail::parse_scenario_json(text)
                 : detail::parse_scenario_toml(text);
  if (doc.ring.empty() && !doc.tasks.empty())
    throw ParseError("scenario: a ring is needed once tasks are declared");
  if (doc.ring.empty()) doc.ring = "QQ[x,y,z]";
  parse_ring_text(doc.ring);  // fail fast on a bad ring
  detail::validate_tasks(doc);
  // object references must resolve to a declared object or parse inline
  // later; declared names win, so only validate the key shapes here.
  return doc;
}

inline ScenarioReport run_scenario_doc(const ScenarioDoc& doc) {
  RingText rt = parse_ring_text(doc.ring);
  if (rt.rational) {
    detail::ScenarioRunner<RationalField> r(RationalField{}, doc);
    return r.run();
  }
  detail::ScenarioRunner<PrimeField> r(PrimeField(rt.p), doc);
  return r.run();
}

inline ScenarioReport run_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioDoc doc = parse_scenario_text(buf.str(), path);
  if (doc.name.empty()) {
    size_t slash = path.find_last_of('/');
    doc.name = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  return run_scenario_doc(doc);
}

inline Json js_scenario_report(const ScenarioReport& rep,
                               bool timings = false) {
  Json j;
  j["name"] = rep.name;
  j["ring"] = rep.ring;
  j["tasks"] = Json::array();
  for (const auto& t : rep.tasks) {
    Json tj;
    tj["index"] = t.index;
    tj["op"] = t.op;
    tj["target"] = t.target;
    tj["level"] = t.level;
    tj["checked"] = t.checked;
    tj["pass"] = t.pass;
    tj["mismatches"] = t.mismatches;
    tj["warnings"] = t.warnings;
    tj["data"] = t.data;
    if (timings) tj["ms"] = t.ms;
    j["tasks"].push_back(tj);
  }
  j["all_pass"] = rep.all_pass;
  return j;
}

inline std::string text_scenario_report(const ScenarioReport& rep,
                                        bool timings = false) {
  std::ostringstream os;
  os << "scenario: " << rep.name << "  (ring " << rep.ring << ")\n";
  for (const auto& t : rep.tasks) {
    os << "  [" << t.index << "] " << t.op;
    if (!t.target.empty()) os << " " << t.target;
    os << ": " << (t.pass ? (t.checked ? "pass" : "ok") : "FAIL");
    if (timings) os << "  (" << t.ms << " ms)";
    os << "\n";
    for (const auto& m : t.mismatches) os << "      " << m << "\n";
    for (const auto& w : t.warnings) os << "      note: " << w << "\n";
  }
  os << (rep.all_pass ? "all tasks passed" : "some tasks FAILED") << " ("
     << rep.tasks.size() << " task" << (rep.tasks.size() == 1 ? "" : "s")
     << ")\n";
  return os.str();
}

}  // namespace extscope
