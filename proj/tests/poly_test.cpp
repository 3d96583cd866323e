// Polynomial layer: monomials, orders, exact arithmetic, parsing, printing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <extscope/ring.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

using namespace extscope;
using F = RationalField;

namespace {

PolyRing<F> ring3() { return make_ring(F{}, {"x", "y", "z"}); }

Poly<F> P(const PolyRing<F>& R, const std::string& s) { return parse_poly(R, s); }

Poly<F> add(const PolyRing<F>& R, const Poly<F>& a, const Poly<F>& b) {
  return poly_add(R.field, R.order, a, b);
}
Poly<F> sub(const PolyRing<F>& R, const Poly<F>& a, const Poly<F>& b) {
  return poly_sub(R.field, R.order, a, b);
}
Poly<F> mul(const PolyRing<F>& R, const Poly<F>& a, const Poly<F>& b) {
  return poly_mul(R.field, R.order, a, b);
}
Poly<F> pow(const PolyRing<F>& R, const Poly<F>& a, long e) {
  return poly_pow(R.field, R.order, a, e);
}
Poly<F> one(const PolyRing<F>& R) {
  return poly_const(R.field, R.nvars(), R.field.one());
}

// Independent multiplication oracle: accumulate coefficient-by-coefficient in
// an exponent-vector map, with none of the library's term bookkeeping.
Poly<F> naive_mul(const PolyRing<F>& R, const Poly<F>& a, const Poly<F>& b) {
  std::map<std::vector<int>, mpq_class> acc;
  for (const auto& ta : a.t)
    for (const auto& tb : b.t) {
      std::vector<int> e(R.nvars());
      for (size_t i = 0; i < R.nvars(); ++i) e[i] = ta.m.e[i] + tb.m.e[i];
      acc[e] += ta.c * tb.c;
    }
  std::vector<Term<F>> out;
  for (const auto& [e, c] : acc)
    if (c != 0) out.push_back({make_monomial(e, R.weights), c});
  return poly_from_terms(R.field, R.order, std::move(out));
}

Poly<F> random_poly(const PolyRing<F>& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 5), expo(0, 3), coef(-4, 4);
  std::vector<Term<F>> ts;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<int> e(R.nvars());
    for (auto& v : e) v = expo(rng);
    int c = coef(rng);
    if (c == 0) c = 1;
    ts.push_back({make_monomial(e, R.weights), mpq_class(c)});
  }
  return poly_from_terms(R.field, R.order, std::move(ts));
}

}  // namespace

TEST_CASE("monomial construction and degree") {
  Monomial m = make_monomial({2, 0, 1}, {1, 1, 1});
  CHECK(m.deg == 3);
  CHECK_FALSE(m.is_one());
  CHECK(mono_one(3).is_one());
  CHECK_THROWS_AS(make_monomial({-1, 0, 0}, {1, 1, 1}), UsageError);

  // weighted degree
  Monomial w = make_monomial({1, 1, 1}, {1, 2, 3});
  CHECK(w.deg == 6);
}

TEST_CASE("degrevlex versus deglex disagree on the classic pair") {
  // x^2 z and x y^2 have equal total degree; deglex prefers the higher power
  // of the first variable, degrevlex the lower power of the last variable.
  auto Rrev = make_ring(F{}, {"x", "y", "z"});
  auto Rlex = make_ring(F{}, {"x", "y", "z"}, {}, MonomialOrder::deglex());
  Poly<F> f = P(Rrev, "x^2*z + x*y^2");
  CHECK(poly_str(Rrev, Poly<F>{{f.lead()}}) == "x*y^2");
  Poly<F> g = P(Rlex, "x^2*z + x*y^2");
  CHECK(poly_str(Rlex, Poly<F>{{g.lead()}}) == "x^2*z");
}

TEST_CASE("elimination order pushes the block to the front") {
  auto R = make_ring(F{}, {"t", "x"}, {}, MonomialOrder::elim(1));
  // With t eliminated first, any power of t beats any power of x alone.
  Poly<F> f = P(R, "t + x^5");
  CHECK(poly_str(R, Poly<F>{{f.lead()}}) == "t");
}

TEST_CASE("parse and print round-trip") {
  auto R = ring3();
  for (const std::string s :
       {"0", "1", "-1", "x", "x*y", "x^2 - y", "x*y^2 + x^2*z - 3",
        "1/2*x^2 - 2/3*y*z + 7", "x^10 - y^10", "-x - y - z"}) {
    Poly<F> f = P(R, s);
    Poly<F> g = P(R, poly_str(R, f));
    CHECK(poly_eq(R.field, f, g));
  }
}

TEST_CASE("parser accepts juxtaposition, parentheses and signs") {
  auto R = ring3();
  CHECK(poly_eq(R.field, P(R, "xy"), P(R, "x*y")));
  CHECK(poly_eq(R.field, P(R, "2x(y+z)"), P(R, "2*x*y + 2*x*z")));
  CHECK(poly_eq(R.field, P(R, "(x+y)^2"), P(R, "x^2 + 2*x*y + y^2")));
  CHECK(poly_eq(R.field, P(R, "x - x"), poly_zero<F>()));
  CHECK(poly_eq(R.field, P(R, "-(x - y)"), P(R, "y - x")));
  CHECK(poly_eq(R.field, P(R, "2/4"), P(R, "1/2")));
  CHECK(P(R, "0").is_zero());
  CHECK_THROWS_AS(P(R, "x +"), ParseError);
  CHECK_THROWS_AS(P(R, "w"), ParseError);
  CHECK_THROWS_AS(P(R, "x^-2"), UsageError);  // negative power
  CHECK_THROWS_AS(P(R, "(x"), ParseError);
}

TEST_CASE("prime-field parsing folds coefficients") {
  auto R5 = make_ring(PrimeField{5}, {"x", "y"});
  Poly<PrimeField> f = parse_poly(R5, "6*x + 5*y");
  CHECK(poly_eq(R5.field, f, parse_poly(R5, "x")));
  Poly<PrimeField> g = parse_poly(R5, "1/2*x");  // 2^{-1} = 3 mod 5
  CHECK(poly_eq(R5.field, g, parse_poly(R5, "3*x")));
}

TEST_CASE("addition and multiplication match a naive oracle") {
  auto R = ring3();
  std::mt19937_64 rng(42);
  for (int it = 0; it < 200; ++it) {
    Poly<F> a = random_poly(R, rng), b = random_poly(R, rng),
            c = random_poly(R, rng);
    CHECK(poly_eq(R.field, mul(R, a, b), naive_mul(R, a, b)));
    // ring axioms
    CHECK(poly_eq(R.field, add(R, a, b), add(R, b, a)));
    CHECK(poly_eq(R.field, mul(R, a, b), mul(R, b, a)));
    CHECK(poly_eq(R.field, mul(R, a, add(R, b, c)),
                  add(R, mul(R, a, b), mul(R, a, c))));
    CHECK(poly_eq(R.field, sub(R, a, a), poly_zero<F>()));
    CHECK(poly_eq(R.field, add(R, a, poly_neg(R.field, a)), poly_zero<F>()));
  }
}

TEST_CASE("power agrees with repeated multiplication") {
  auto R = ring3();
  Poly<F> f = P(R, "x + y - 2*z");
  Poly<F> acc = one(R);
  for (int k = 0; k <= 5; ++k) {
    CHECK(poly_eq(R.field, pow(R, f, k), acc));
    acc = mul(R, acc, f);
  }
  CHECK(pow(R, poly_zero<F>(), 3).is_zero());
}

TEST_CASE("degree and homogeneity") {
  auto R = ring3();
  CHECK(P(R, "x*y^2 + z").degree() == 3);
  auto h1 = homogeneity(P(R, "x^2 + y*z"));
  CHECK(h1.homogeneous);
  CHECK(h1.degree == 2);
  auto h2 = homogeneity(P(R, "x^2 + y"));
  CHECK_FALSE(h2.homogeneous);
  auto hz = homogeneity(poly_zero<F>());
  CHECK(hz.zero);

  // weighted homogeneity: y has weight 2, so x^2 + y is weighted-homogeneous
  auto W = make_ring(F{}, {"x", "y"}, {}, MonomialOrder::degrevlex(), {1, 2});
  auto hw = homogeneity(P(W, "x^2 + y"));
  CHECK(hw.homogeneous);
  CHECK(hw.degree == 2);
}

TEST_CASE("division with remainder") {
  auto R = ring3();
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    Poly<F> f = random_poly(R, rng);
    Poly<F> g = random_poly(R, rng);
    if (g.is_zero()) continue;
    auto res = divide_with_remainder(R.field, R.order, f, {g});
    Poly<F> back = add(R, mul(R, res.quotients[0], g), res.remainder);
    CHECK(poly_eq(R.field, back, f));
    // no term of the remainder is divisible by the leading monomial of g
    const Monomial& lg = g.lead().m;
    for (const auto& t : res.remainder.t) {
      bool divisible = true;
      for (size_t i = 0; i < R.nvars(); ++i)
        if (t.m.e[i] < lg.e[i]) divisible = false;
      CHECK_FALSE(divisible);
    }
  }
}

TEST_CASE("multivariate division reduces every term") {
  auto R = ring3();
  // divide by two generators at once and reassemble
  std::vector<Poly<F>> divs{P(R, "x^2 - y"), P(R, "x*y - z")};
  Poly<F> f = P(R, "x^3 + x^2*y + x*y^2 + 5");
  auto res = divide_with_remainder(R.field, R.order, f, divs);
  Poly<F> back = res.remainder;
  for (size_t i = 0; i < divs.size(); ++i)
    back = add(R, back, mul(R, res.quotients[i], divs[i]));
  CHECK(poly_eq(R.field, back, f));
  for (const auto& t : res.remainder.t)
    for (const auto& d : divs) {
      const Monomial& lg = d.lead().m;
      bool divisible = true;
      for (size_t i = 0; i < R.nvars(); ++i)
        if (t.m.e[i] < lg.e[i]) divisible = false;
      CHECK_FALSE(divisible);
    }
}

TEST_CASE("monic scaling") {
  auto R = ring3();
  Poly<F> f = P(R, "3*x^2 - 6*y");
  Poly<F> m = poly_monic(R.field, f);
  CHECK(R.field.is_one(m.lead().c));
  CHECK(poly_eq(R.field, poly_scale(R.field, m, mpq_class(3)), f));
}

TEST_CASE("ring construction rejects bad input") {
  CHECK_THROWS_AS(make_ring(F{}, {"x"}, {}, MonomialOrder::degrevlex(), {0}),
                  UsageError);
  auto R = ring3();
  CHECK_THROWS_AS(make_ring(F{}, {"x", "y", "z"}, {P(R, "x^2 + y")}),
                  UsageError);  // inhomogeneous quotient generator
  CHECK_THROWS_AS(make_ring(F{}, {"x", "y", "z"}, {P(R, "1")}), UsageError);
  CHECK(ring3().nvars() == 3);
  CHECK_FALSE(ring3().is_quotient());
}

TEST_CASE("ring description text round-trips through the parser") {
  auto R = ring3();
  auto Q = make_ring(F{}, {"x", "y", "z"}, {P(R, "x^2"), P(R, "x*y")});
  std::string s = ring_str(Q);
  auto T = parse_ring_text(s);
  auto Q2 = ring_from_text(F{}, T);
  CHECK(Q2.vars == Q.vars);
  CHECK(Q2.quotient.size() == 2);
  CHECK(poly_eq(Q.field, Q2.quotient[0], Q.quotient[0]));
}
