// Numeric and ideal-valued invariants: Hilbert series, dimension, depth,
// grade, annihilator-derived ideals, associated primes, tail periodicity.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <extscope/scenario.hpp>

#include <random>
#include <vector>

using namespace extscope;
using F = RationalField;

namespace {

PolyRing<F> ring3() { return make_ring(F{}, {"x", "y", "z"}); }
Poly<F> P(const PolyRing<F>& R, const std::string& s) { return parse_poly(R, s); }
HilbertSeries HS(const std::string& s) { return detail::hs_parse(s); }

PresentedModule<F> ring_module(const PolyRing<F>& R) {
  return cyclic_module(R, {}, "R");
}

// Expand a closed-form series into coefficients for degrees 0..maxdeg by
// multiplying the numerator with truncated geometric series, one denominator
// factor at a time. Entirely independent of the library's own expansion.
std::vector<mpz_class> expand_series(const HilbertSeries& h, long long maxdeg) {
  std::map<long long, mpz_class> acc(h.numer.begin(), h.numer.end());
  for (long long w : h.denom) {
    std::map<long long, mpz_class> next;
    for (const auto& [e, c] : acc)
      for (long long k = e; k <= maxdeg; k += w) next[k] += c;
    acc = std::move(next);
  }
  std::vector<mpz_class> out(static_cast<size_t>(maxdeg + 1));
  for (const auto& [e, c] : acc) {
    if (e < 0) continue;  // callers only compare the nonnegative range
    if (e <= maxdeg) out[static_cast<size_t>(e)] = c;
  }
  return out;
}

// Count monomials of total degree d avoiding every generator of a monomial
// ideal: the graded dimension of the cyclic quotient, counted directly.
void count_rec(int n, int d, std::vector<int>& cur, size_t pos,
               const std::vector<Monomial>& gens, long long& count) {
  if (pos + 1 == static_cast<size_t>(n)) {
    cur[pos] = d;
    for (const auto& g : gens) {
      bool div = true;
      for (int v = 0; v < n; ++v)
        if (cur[v] < g.e[v]) { div = false; break; }
      if (div) return;
    }
    ++count;
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur[pos] = k;
    count_rec(n, d - k, cur, pos + 1, gens, count);
  }
}

long long quotient_count(const PolyRing<F>& R,
                         const std::vector<Poly<F>>& monomial_gens,
                         long long d) {
  std::vector<Monomial> gens;
  for (const auto& g : monomial_gens) gens.push_back(g.lead().m);
  std::vector<int> cur(R.nvars());
  long long count = 0;
  count_rec(static_cast<int>(R.nvars()), static_cast<int>(d), cur, 0, gens,
            count);
  return count;
}

}  // namespace

TEST_CASE("closed-form series match a direct monomial count") {
  auto R = ring3();
  // fixed examples first
  CHECK(hs_equal(hilbert_series(ring_module(R)), HS("1/(1-t)^3")));
  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  CHECK(hs_equal(hilbert_series(M, {}, /*cross_check=*/true),
                 HS("(1 - 2*t^2 + t^3)/(1-t)^3")));
  CHECK(hs_str(hilbert_series(zero_module(R))) == "0");

  // randomized: expansion coefficients equal the monomial count everywhere
  std::mt19937_64 rng(314);
  std::uniform_int_distribution<int> expo(0, 3), ngen(1, 3);
  for (int it = 0; it < 12; ++it) {
    std::vector<Poly<F>> gens;
    int m = ngen(rng);
    for (int g = 0; g < m; ++g) {
      std::vector<int> e(3);
      for (auto& v : e) v = expo(rng);
      gens.push_back(poly_from_terms(
          R.field, R.order, {{make_monomial(e, R.weights), mpq_class(1)}}));
    }
    std::erase_if(gens, [](const Poly<F>& f) { return f.degree() == 0; });
    if (gens.empty()) continue;
    auto Mr = cyclic_module(R, gens, "random");
    auto coeffs = expand_series(hilbert_series(Mr), 8);
    for (long long d = 0; d <= 8; ++d)
      CHECK(coeffs[static_cast<size_t>(d)] ==
            mpz_class(static_cast<long>(quotient_count(R, gens, d))));
  }
}

TEST_CASE("series of weighted rings carry the weights in the denominator") {
  auto W = make_ring(F{}, {"x", "y"}, {}, MonomialOrder::degrevlex(), {1, 2});
  HilbertSeries h = hilbert_series(ring_module(W));
  HilbertSeries want;
  want.numer = Laurent{{0, mpz_class(1)}};
  want.denom = {1, 2};
  CHECK(hs_equal(h, want));
  // degree-d dimensions: 1, 1, 2, 2, 3, 3, ...
  auto coeffs = expand_series(h, 5);
  CHECK(coeffs == std::vector<mpz_class>({mpz_class(1), mpz_class(1),
                                          mpz_class(2), mpz_class(2),
                                          mpz_class(3), mpz_class(3)}));
}

TEST_CASE("series of a quotient ring as a module over itself") {
  auto R = ring3();
  auto Q = make_ring(F{}, {"x", "y", "z"},
                     {P(R, "x^2"), P(R, "x*y"), P(R, "x*z")});
  CHECK(hs_equal(hilbert_series(ring_module(Q)),
                 HS("(1 - 3*t^2 + 3*t^3 - t^4)/(1-t)^3")));
}

TEST_CASE("shift-tolerant series comparison") {
  CHECK(hs_equal_shifted(HS("t/(1-t)"), HS("1/(1-t)")));
  CHECK(hs_equal_shifted(HS("t^-3/(1-t)"), HS("t^5/(1-t)")));
  CHECK_FALSE(hs_equal_shifted(HS("(1 + t)/(1-t)"), HS("1/(1-t)")));
  CHECK(hs_equal_shifted(HS("0"), HS("0")));
  CHECK_FALSE(hs_equal_shifted(HS("0"), HS("1/(1-t)")));
  // plain equality is strict about shifts
  CHECK_FALSE(hs_equal(HS("t/(1-t)"), HS("1/(1-t)")));
}

TEST_CASE("dimension from the series agrees with direct support computations") {
  auto R = ring3();
  auto dim_both = [&](std::vector<Poly<F>> gens) {
    auto M = cyclic_module(R, std::move(gens), "M");
    long long d = module_dimension(M);
    CHECK(hs_dimension(hilbert_series(M)) == d);
    return d;
  };
  CHECK(dim_both({P(R, "x*y"), P(R, "x*z")}) == 2);
  CHECK(dim_both({P(R, "x"), P(R, "y")}) == 1);
  CHECK(dim_both({P(R, "x"), P(R, "y"), P(R, "z")}) == 0);
  CHECK(dim_both({}) == 3);
  CHECK(module_dimension(zero_module(R)) == -1);
  CHECK(ring_dimension(R) == 3);
  auto Q = make_ring(F{}, {"x", "y", "z"},
                     {P(R, "x^2"), P(R, "x*y"), P(R, "x*z")});
  CHECK(ring_dimension(Q) == 2);
}

TEST_CASE("depth and grade across the standard ladder") {
  auto R = ring3();
  auto free1 = ring_module(R);
  CHECK(depth_of(free1) == 3);
  CHECK(grade_of(free1) == 0);

  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  CHECK(depth_of(M) == 1);
  CHECK(grade_of(M) == 1);

  auto L = cyclic_module(R, {P(R, "x"), P(R, "y")}, "L");
  CHECK(depth_of(L) == 1);
  CHECK(grade_of(L) == 2);

  auto K = cyclic_module(R, {P(R, "x"), P(R, "y"), P(R, "z")}, "k");
  CHECK(depth_of(K) == 0);
  CHECK(grade_of(K) == 3);

  CHECK(depth_of(zero_module(R)) == kInfinity);
  CHECK(grade_of(zero_module(R)) == kInfinity);

  // an ideal viewed as a module embeds in the ring, so its grade is zero
  auto I = ideal_module(R, {P(R, "x*y"), P(R, "x*z")}, "I");
  CHECK(grade_of(I) == 0);
  CHECK(ideal_is_zero(annihilator(I)));
}

TEST_CASE("projective dimension pairs with depth against the variable count") {
  auto R = ring3();
  for (auto gens : {std::vector<Poly<F>>{},
                    {P(R, "x*y"), P(R, "x*z")},
                    {P(R, "x"), P(R, "y")},
                    {P(R, "x"), P(R, "y"), P(R, "z")},
                    {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}}) {
    auto M = cyclic_module(R, gens, "M");
    auto rep = compute_invariants(M);
    REQUIRE(rep.finite_pd);
    CHECK(rep.pd + rep.depth == 3);
  }
}

TEST_CASE("annihilator-derived ideals recover the annihilator up to radical") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  Ideal<F> I = make_ideal(R, {P(R, "x*y"), P(R, "x*z")});

  // intersecting the dual annihilators over all positive indices gives the
  // annihilator exactly here: (x) meet (y, z) = (xy, xz)
  CHECK(ideal_equal(hann_ideal(M, 3), I));
  CHECK(radical_ideal_equal(gamma_ideal(M, 3), annihilator(M)));

  // second fixture with an embedded component
  auto N = cyclic_module(R, {P(R, "x^2"), P(R, "x*y")}, "N");
  CHECK(radical_ideal_equal(gamma_ideal(N, 3), annihilator(N)));
  CHECK(radical_ideal_equal(hann_ideal(N, 3), annihilator(N)));

  // contrast on a torsion-free module: its zeroth dual is faithful, so the
  // product over all duals collapses to zero, while the intersection over
  // positive indices still isolates the codimension-two component
  auto Im = ideal_module(R, {P(R, "x*y"), P(R, "x*z")}, "I");
  CHECK(ideal_is_zero(annihilator(Im)));
  CHECK(ideal_is_zero(hann_ideal(Im, 3)));
  CHECK(ideal_equal(gamma_ideal(Im, 3),
                    make_ideal(R, {P(R, "y"), P(R, "z")})));
}

TEST_CASE("associated primes of monomial quotients by brute force") {
  auto R = ring3();
  auto ass = [&](std::vector<Poly<F>> gens) {
    return monomial_ass(make_ideal(R, std::move(gens)), {});
  };
  CHECK(ass({P(R, "x*y"), P(R, "x*z")}) ==
        std::vector<VarPrime>{{0}, {1, 2}});
  CHECK(ass({P(R, "x"), P(R, "y")}) == std::vector<VarPrime>{{0, 1}});
  CHECK(ass({P(R, "x^2"), P(R, "x*y")}) ==
        std::vector<VarPrime>{{0}, {0, 1}});  // embedded prime included
  CHECK(ass({}) == std::vector<VarPrime>{{}});  // the ring itself: zero ideal

  // minimal primes of the annihilator
  auto mp = monomial_minimal_primes(
      make_ideal(R, {P(R, "x*y"), P(R, "x*z")}));
  CHECK(mp == std::vector<VarPrime>{{0}, {1, 2}});
}

TEST_CASE("union of dual support components captures associated primes") {
  auto R = ring3();
  Ideal<F> I = make_ideal(R, {P(R, "x*y"), P(R, "x*z")});
  AssReport rep = ass_oracle(I);
  CHECK(rep.contains_ass);
  CHECK(rep.equals_ass);
  CHECK(rep.union_min == std::vector<VarPrime>{{0}, {1, 2}});
  CHECK(rep.refined_in_ass);
  CHECK(rep.refined_matches_top);

  // with an embedded prime the union still contains every witness
  AssReport emb = ass_oracle(make_ideal(R, {P(R, "x^2"), P(R, "x*y")}));
  CHECK(emb.contains_ass);
}

TEST_CASE("tail of the dual sequence over a hypersurface") {
  // residue field of the coordinate cross: the resolution never stops, yet
  // the ambient ring has finite injective dimension, so exactly one dual
  // survives and the tail is all zeros from step two on
  auto R1 = make_ring(F{}, {"x", "y"});
  auto Q = make_ring(F{}, {"x", "y"}, {P(R1, "x*y")});
  auto M = cyclic_module(Q, {P(Q, "x"), P(Q, "y")}, "k");
  EassReport<F> rep = eass_experiment(M, 6, {});
  CHECK(rep.truncated);
  CHECK(rep.periodic);
  CHECK(rep.period == 1);
  CHECK(rep.start == 2);
  REQUIRE(rep.anns.size() == 7);
  CHECK(ideal_is_unit(rep.anns[0]));  // no nonzero maps from the field
  CHECK(ideal_equal(rep.anns[1], make_ideal(Q, {P(Q, "x"), P(Q, "y")})));
  for (size_t i = 2; i < rep.anns.size(); ++i)
    CHECK(ideal_is_unit(rep.anns[i]));
  CHECK(rep.stable_min_valid);
  CHECK(rep.stable_min.empty());

  // a maximal Cohen-Macaulay module over the same ring: every positive dual
  // vanishes, so the tail is flat from the very first step
  auto pillar = cyclic_module(Q, {P(Q, "x")}, "pillar");
  EassReport<F> mcm = eass_experiment(pillar, 4, {});
  CHECK(mcm.periodic);
  CHECK(mcm.period == 1);
  for (size_t i = 1; i < mcm.anns.size(); ++i)
    CHECK(ideal_is_unit(mcm.anns[i]));
}

TEST_CASE("ladder shift between an ideal and its cyclic quotient") {
  auto R = ring3();
  Ideal<F> I = make_ideal(R, {P(R, "x*y"), P(R, "x*z")});
  auto r1 = ext_shift_check(I, 1, {});
  CHECK(r1.match);
  CHECK_FALSE(r1.both_zero);
  CHECK(ideal_equal(r1.lhs_ann, make_ideal(R, {P(R, "y"), P(R, "z")})));
  auto r2 = ext_shift_check(I, 2, {});
  CHECK(r2.match);
  CHECK(r2.both_zero);
  CHECK_THROWS_AS(ext_shift_check(I, 0, {}), UsageError);
}

TEST_CASE("generator counts against the top dual") {
  auto R = ring3();
  auto ci = generator_count_check(
      cyclic_module(R, {P(R, "x"), P(R, "y")}, "ci"));
  CHECK(ci.applicable);
  CHECK(ci.pd == 2);
  CHECK(ci.betti == std::vector<size_t>{1, 2, 1});
  CHECK(ci.top_matches);
  CHECK(ci.codim2_perfect);
  CHECK(ci.hilbert_burch_shape);
  CHECK(ci.mu_top == ci.betti.back());

  auto det = generator_count_check(
      cyclic_module(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}, "det"));
  CHECK(det.applicable);
  CHECK(det.betti == std::vector<size_t>{1, 3, 2});
  CHECK(det.top_matches);
  CHECK(det.codim2_perfect);
  CHECK(det.hilbert_burch_shape);

  // grade one: the codimension-two shape does not apply
  auto mixed = generator_count_check(
      cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "mixed"));
  CHECK(mixed.pd == 2);
  CHECK_FALSE(mixed.codim2_perfect);
}

TEST_CASE("dimension formula for the duals") {
  auto R = ring3();
  // codimension hypothesis holds: every conclusion follows
  auto good = dim_formula_check(cyclic_module(R, {P(R, "x"), P(R, "y")}, "L"));
  CHECK(good.codim_hypothesis);
  CHECK(good.bounds_hold);
  CHECK(good.conclusion);
  CHECK(good.dim_matches_module);
  CHECK(good.dim_matches_complement);
  CHECK(good.supp_equal);
  CHECK(good.ext_dims == std::vector<long long>{-1, -1, 1, -1});

  // mixed-dimension module: the hypothesis holds at grade 1 but the support
  // of the grade-index dual is strictly smaller than the module support
  auto mixed =
      dim_formula_check(cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M"));
  CHECK(mixed.codim_hypothesis);
  CHECK(mixed.bounds_hold);
  CHECK(mixed.conclusion);
  CHECK_FALSE(mixed.supp_equal);
}

TEST_CASE("support comparison through the dual tower") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x"), P(R, "y")}, "M");
  auto N = cyclic_module(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}, "N");
  auto rep = homological_support_check(M, N);
  CHECK(rep.window == 1);
  CHECK(rep.equal);  // both sides cut out V(x, y)
}

TEST_CASE("full invariant report on the running example") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  auto rep = compute_invariants(M);
  CHECK_FALSE(rep.is_zero);
  CHECK(rep.mu == 1);
  CHECK(rep.betti == std::vector<size_t>{1, 2, 1});
  CHECK(rep.pd == 2);
  CHECK(rep.depth == 1);
  CHECK(rep.grade == 1);
  CHECK(rep.dim == 2);
  CHECK(rep.ring_dim == 3);
  CHECK(rep.ext_sup == 2);
  CHECK(rep.finite_pd);
  CHECK_FALSE(rep.cohen_macaulay);
  CHECK_FALSE(rep.perfect);
  CHECK_FALSE(rep.quasi_perfect);
  CHECK(ideal_equal(rep.ann, make_ideal(R, {P(R, "x*y"), P(R, "x*z")})));

  auto freer = compute_invariants(ring_module(R));
  CHECK(freer.cohen_macaulay);
  CHECK(freer.perfect);
  CHECK(freer.pd == 0);

  auto zero = compute_invariants(zero_module(R));
  CHECK(zero.is_zero);
  CHECK(zero.mu == 0);
  CHECK(zero.pd == -1);
  CHECK(zero.dim == -1);
  CHECK(zero.depth == kInfinity);
}

TEST_CASE("annihilator of a direct sum with a free part is zero") {
  auto R = ring3();
  auto tor = cyclic_module(R, {P(R, "x")}, "T");
  auto freer = free_presented(R, FreeModule::free_of_rank(1), "F");
  auto sum = module_direct_sum(freer, tor);
  CHECK(ideal_is_zero(annihilator(sum)));
  CHECK(mu(sum) == 2);
  CHECK(module_dimension(sum) == 3);
}
