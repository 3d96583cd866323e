#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace extscope {

// A standard-graded polynomial algebra over a field, optionally modulo a
// homogeneous ideal (the coordinate ring the engine computes over). Rings are
// immutable values and passed explicitly; nothing is ambient.
template <class F>
struct PolyRing {
  F field;
  std::vector<std::string> vars;
  std::vector<long long> weights;  // positive; all 1 by default
  MonomialOrder order;             // active order for canonical forms
  std::vector<Poly<F>> quotient;   // homogeneous relations; empty = free ring

  size_t nvars() const { return vars.size(); }
  bool is_quotient() const { return !quotient.empty(); }

  // Opaque slot the basis engine uses to keep the quotient's completed basis;
  // shared across copies of the same ring value.
  struct QuotientCache {
    std::mutex mu;
    std::shared_ptr<const void> gb;
  };
  std::shared_ptr<QuotientCache> qcache = std::make_shared<QuotientCache>();
};

template <class F>
PolyRing<F> make_ring(F field, std::vector<std::string> vars,
                      std::vector<Poly<F>> quotient = {},
                      MonomialOrder order = MonomialOrder::degrevlex(),
                      std::vector<long long> weights = {}) {
  PolyRing<F> r;
  r.field = field;
  r.vars = std::move(vars);
  if (weights.empty()) weights.assign(r.vars.size(), 1);
  if (weights.size() != r.vars.size()) throw UsageError("weights arity mismatch");
  for (long long w : weights)
    if (w <= 0) throw UsageError("weights must be positive");
  r.weights = std::move(weights);
  r.order = order;
  for (const auto& g : quotient) {
    auto h = homogeneity(g);
    if (h.zero) throw UsageError("zero generator in quotient ideal");
    if (!h.homogeneous)
      throw UsageError("quotient ideal generators must be homogeneous");
    if (h.degree == 0) throw UsageError("quotient ideal contains a unit");
  }
  r.quotient = std::move(quotient);
  return r;
}

// The i-th variable as a polynomial.
template <class F>
Poly<F> poly_var(const PolyRing<F>& R, size_t i) {
  if (i >= R.nvars()) throw UsageError("variable index out of range");
  std::vector<int> exps(R.nvars(), 0);
  exps[i] = 1;
  Poly<F> f;
  f.t.push_back({make_monomial(std::move(exps), R.weights), R.field.one()});
  return f;
}

template <class F>
bool same_ring(const PolyRing<F>& a, const PolyRing<F>& b) {
  if (!a.field.same(b.field) || a.vars != b.vars || a.weights != b.weights)
    return false;
  if (a.quotient.size() != b.quotient.size()) return false;
  for (size_t i = 0; i < a.quotient.size(); ++i)
    if (!poly_eq(a.field, a.quotient[i], b.quotient[i])) return false;
  return true;
}

template <class F>
void require_same_ring(const PolyRing<F>& a, const PolyRing<F>& b,
                       const char* what) {
  if (!same_ring(a, b))
    throw UsageError(std::string("ring mismatch in ") + what);
}

// The underlying free polynomial ring (quotient relations dropped).
template <class F>
PolyRing<F> ambient_ring(const PolyRing<F>& r) {
  PolyRing<F> s = r;
  s.quotient.clear();
  s.qcache = std::make_shared<typename PolyRing<F>::QuotientCache>();
  return s;
}

// ---------------------------------------------------------------------------
// Text form. Canonical printing uses explicit '*' and '^', terms in the active
// order, rational coefficients as "a" or "a/b", prime-field coefficients as
// canonical residues. parse(print(f)) reproduces f exactly.
// ---------------------------------------------------------------------------

template <class F>
std::string mono_str(const PolyRing<F>& R, const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!first) os << "*";
    os << R.vars[i];
    if (m.e[i] > 1) os << "^" << m.e[i];
    first = false;
  }
  return first ? "1" : os.str();
}

inline bool coeff_is_negative(const mpq_class& c) { return sgn(c) < 0; }
inline bool coeff_is_negative(std::uint32_t) { return false; }
inline mpq_class coeff_abs(const mpq_class& c) { return abs(c); }
inline std::uint32_t coeff_abs(std::uint32_t c) { return c; }

template <class F>
std::string poly_str(const PolyRing<F>& R, const Poly<F>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& tm : f.t) {
    bool neg = coeff_is_negative(tm.c);
    auto a = coeff_abs(tm.c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string ms = mono_str(R, tm.m);
    if (R.field.is_one(a)) {
      os << ms;
    } else if (ms == "1") {
      os << R.field.str(a);
    } else {
      os << R.field.str(a) << "*" << ms;
    }
    first = false;
  }
  return os.str();
}

namespace detail {

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Resolve an identifier against declared variables: exact match, then unique
// case-insensitive match, then greedy decomposition into declared variables
// (so "xy" means x*y when x and y are variables but xy is not).
template <class F>
std::vector<int> resolve_ident(const PolyRing<F>& R, const std::string& id) {
  for (size_t i = 0; i < R.vars.size(); ++i)
    if (R.vars[i] == id) return {static_cast<int>(i)};
  {
    int hit = -1, count = 0;
    for (size_t i = 0; i < R.vars.size(); ++i)
      if (lower(R.vars[i]) == lower(id)) {
        hit = static_cast<int>(i);
        ++count;
      }
    if (count == 1) return {hit};
  }
  std::vector<int> out;
  size_t pos = 0;
  while (pos < id.size()) {
    int best = -1;
    size_t best_len = 0;
    for (size_t i = 0; i < R.vars.size(); ++i) {
      const std::string& v = R.vars[i];
      if (v.size() > best_len && pos + v.size() <= id.size()) {
        std::string piece = id.substr(pos, v.size());
        if (piece == v || lower(piece) == lower(v)) {
          best = static_cast<int>(i);
          best_len = v.size();
        }
      }
    }
    if (best < 0)
      throw ParseError("unknown variable '" + id + "'");
    out.push_back(best);
    pos += best_len;
  }
  return out;
}

template <class F>
class PolyParser {
 public:
  PolyParser(const PolyRing<F>& R, const std::string& s) : R_(R), s_(s) {}

  Poly<F> parse() {
    Poly<F> f = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("trailing input at '" + s_.substr(pos_) + "'");
    return f;
  }

 private:
  const PolyRing<F>& R_;
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly<F> expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly<F> acc = term();
    if (neg) acc = poly_neg(R_.field, acc);
    for (;;) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Poly<F> t = term();
        acc = (c == '+') ? poly_add(R_.field, R_.order, acc, t)
                         : poly_sub(R_.field, R_.order, acc, t);
      } else {
        return acc;
      }
    }
  }

  Poly<F> term() {
    Poly<F> acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = poly_mul(R_.field, R_.order, acc, factor());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        // juxtaposition: 2x, x(y+z), (x+y)z
        acc = poly_mul(R_.field, R_.order, acc, factor());
      } else {
        return acc;
      }
    }
  }

  Poly<F> factor() {
    Poly<F> b = base();
    if (peek() == '^') {
      ++pos_;
      long e = integer();
      b = poly_pow(R_.field, R_.order, b, e);
    }
    return b;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Poly<F> base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly<F> f = expr();
      if (!eat(')')) throw ParseError("missing ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    throw ParseError(std::string("unexpected character '") + c + "'");
  }

  Poly<F> number() {
    mpz_class num = digits();
    mpz_class den = 1;
    // "a/b" with b a digit string is a rational literal.
    size_t save = pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        den = digits();
      } else {
        pos_ = save;
      }
    }
    return poly_const(R_.field, R_.nvars(), R_.field.from_fraction(num, den));
  }

  mpz_class digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return mpz_class(s_.substr(start, pos_ - start));
  }

  Poly<F> ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    std::vector<int> vs = resolve_ident(R_, id);
    std::vector<int> exps(R_.nvars(), 0);
    for (int v : vs) exps[static_cast<size_t>(v)] += 1;
    Poly<F> f;
    f.t.push_back({make_monomial(std::move(exps), R_.weights), R_.field.one()});
    return f;
  }
};

}  // namespace detail

template <class F>
Poly<F> parse_poly(const PolyRing<F>& R, const std::string& s) {
  detail::PolyParser<F> p(R, s);
  return p.parse();
}

// Split "f, g, h" on top-level commas (depth-0 w.r.t. parentheses).
inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

// Parse "f, g, h" — a comma list of polynomial expressions. A single piece
// that fails to parse but is wrapped in parentheses is peeled once and
// retried, so both "(x+y+z)^5" and "(X^2, XY, XZ)" work.
template <class F>
std::vector<Poly<F>> parse_poly_list(const PolyRing<F>& R, const std::string& s) {
  auto trim = [](const std::string& t) {
    size_t a = t.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return std::string();
    size_t b = t.find_last_not_of(" \t\r\n");
    return t.substr(a, b - a + 1);
  };
  std::string body = trim(s);
  if (body.empty() || body == "0") return {};
  auto pieces = split_top_level(body, ',');
  if (pieces.size() == 1) {
    try {
      return {parse_poly(R, body)};
    } catch (const ParseError&) {
      if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
        return parse_poly_list(R, body.substr(1, body.size() - 2));
      throw;
    }
  }
  std::vector<Poly<F>> out;
  for (const auto& piece : pieces) {
    if (trim(piece).empty()) continue;
    out.push_back(parse_poly(R, piece));
  }
  return out;
}

// Field-agnostic pieces of a parsed ring description like
// "QQ[x,y,z]", "F5[X,Y,Z]/((X+Y+Z)^5)", "QQ[X,Y,Z]/(X^2, X*Y*Z)".
struct RingText {
  bool rational = true;
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  std::vector<long long> weights;
  std::string quotient_src;  // raw text after '/', may be empty
};

inline RingText parse_ring_text(const std::string& s) {
  RingText t;
  size_t lb = s.find('[');
  size_t rb = s.find(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw ParseError("ring syntax: expected FIELD[vars]");
  auto trim = [](const std::string& x) {
    size_t a = x.find_first_not_of(" \t");
    if (a == std::string::npos) return std::string();
    size_t b = x.find_last_not_of(" \t");
    return x.substr(a, b - a + 1);
  };
  std::string fld = trim(s.substr(0, lb));
  if (fld == "QQ" || fld == "Q") {
    t.rational = true;
  } else if (fld.size() > 1 && (fld[0] == 'F' || fld[0] == 'f')) {
    t.rational = false;
    try {
      t.p = static_cast<std::uint32_t>(std::stoul(fld.substr(1)));
    } catch (...) {
      throw ParseError("ring syntax: bad field '" + fld + "'");
    }
  } else {
    throw ParseError("ring syntax: unknown field '" + fld + "'");
  }
  for (const auto& piece : split_top_level(s.substr(lb + 1, rb - lb - 1), ',')) {
    std::string v = trim(piece);
    if (v.empty()) throw ParseError("ring syntax: empty variable name");
    size_t colon = v.find(':');
    long long w = 1;
    if (colon != std::string::npos) {
      w = std::stoll(trim(v.substr(colon + 1)));
      v = trim(v.substr(0, colon));
    }
    t.vars.push_back(v);
    t.weights.push_back(w);
  }
  if (t.vars.empty()) throw ParseError("ring syntax: no variables");
  std::string rest = trim(s.substr(rb + 1));
  if (!rest.empty()) {
    if (rest[0] != '/')
      throw ParseError("ring syntax: unexpected text after ']'");
    t.quotient_src = trim(rest.substr(1));
    if (t.quotient_src.empty())
      throw ParseError("ring syntax: empty quotient ideal");
  }
  return t;
}

template <class F>
PolyRing<F> ring_from_text(F field, const RingText& t,
                           MonomialOrder order = MonomialOrder::degrevlex()) {
  PolyRing<F> free_ring = make_ring(field, t.vars, {}, order, t.weights);
  std::vector<Poly<F>> gens;
  if (!t.quotient_src.empty())
    gens = parse_poly_list(free_ring, t.quotient_src);
  return make_ring(field, t.vars, std::move(gens), order, t.weights);
}

template <class F>
std::string ring_str(const PolyRing<F>& R) {
  std::ostringstream os;
  os << R.field.name() << "[";
  for (size_t i = 0; i < R.vars.size(); ++i) {
    if (i) os << ",";
    os << R.vars[i];
    if (R.weights[i] != 1) os << ":" << R.weights[i];
  }
  os << "]";
  if (R.is_quotient()) {
    os << "/(";
    for (size_t i = 0; i < R.quotient.size(); ++i) {
      if (i) os << ", ";
      os << poly_str(R, R.quotient[i]);
    }
    os << ")";
  }
  return os.str();
}

}  // namespace extscope
