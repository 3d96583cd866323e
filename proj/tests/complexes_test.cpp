// Free complexes and resolutions, checked against an independent dense
// linear-algebra oracle on graded pieces.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <extscope/invariants.hpp>

#include <map>
#include <random>
#include <vector>

using namespace extscope;
using F = RationalField;

namespace {

PolyRing<F> ring3() { return make_ring(F{}, {"x", "y", "z"}); }
Poly<F> P(const PolyRing<F>& R, const std::string& s) { return parse_poly(R, s); }

// All exponent vectors of total degree d in n variables.
void enum_rec(int n, int d, std::vector<int>& cur, size_t pos,
              std::vector<std::vector<int>>& out) {
  if (pos + 1 == static_cast<size_t>(n)) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur[pos] = k;
    enum_rec(n, d - k, cur, pos + 1, out);
  }
}

std::vector<std::vector<int>> monomials_of_degree(int n, int d) {
  std::vector<std::vector<int>> out;
  if (d < 0) return out;
  std::vector<int> cur(n);
  enum_rec(n, d, cur, 0, out);
  return out;
}

// Dimension of the degree-d piece of a twisted free module over n variables.
long long graded_dim(const FreeModule& fm, int n, long long d) {
  long long total = 0;
  for (long long tw : fm.twists)
    total += static_cast<long long>(
        monomials_of_degree(n, static_cast<int>(d - tw)).size());
  return total;
}

// Exact rank of a rational matrix by Gaussian elimination.
long long dense_rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty() || m[0].empty()) return 0;
  size_t rows = m.size(), cols = m[0].size(), rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return static_cast<long long>(rank);
}

// Matrix of a graded map in total degree d, as rationals in a monomial basis.
long long graded_rank(const PolyRing<F>& R, const ModuleMap<F>& m, long long d) {
  const int n = static_cast<int>(R.nvars());
  // row index: (target generator, exponent vector)
  std::map<std::pair<size_t, std::vector<int>>, size_t> row_of;
  for (size_t i = 0; i < m.target.rank(); ++i)
    for (auto& e :
         monomials_of_degree(n, static_cast<int>(d - m.target.twists[i]))) {
      size_t id = row_of.size();
      row_of[{i, e}] = id;
    }
  std::vector<std::vector<mpq_class>> mat;
  auto add_col = [&](const std::vector<std::pair<std::pair<size_t, std::vector<int>>,
                                                 mpq_class>>& entries) {
    std::vector<mpq_class> col(row_of.size(), mpq_class(0));
    for (const auto& [key, c] : entries) col[row_of.at(key)] += c;
    mat.push_back(std::move(col));
  };
  for (size_t j = 0; j < m.source.rank(); ++j)
    for (auto& e :
         monomials_of_degree(n, static_cast<int>(d - m.source.twists[j]))) {
      std::vector<std::pair<std::pair<size_t, std::vector<int>>, mpq_class>>
          entries;
      for (size_t i = 0; i < m.target.rank(); ++i) {
        const Poly<F>& p = m.a[i][j];
        for (const auto& t : p.t) {
          std::vector<int> prod(n);
          for (int v = 0; v < n; ++v) prod[v] = t.m.e[v] + e[v];
          entries.push_back({{i, prod}, t.c});
        }
      }
      add_col(entries);
    }
  // columns were collected as rows of `mat`; rank is transpose-invariant
  return dense_rank(std::move(mat));
}

// Count the monomials of degree d avoiding every generator of a monomial
// ideal - the graded dimension of the cyclic quotient, counted directly.
long long quotient_count(const PolyRing<F>& R,
                         const std::vector<Poly<F>>& monomial_gens,
                         long long d) {
  const int n = static_cast<int>(R.nvars());
  long long count = 0;
  for (auto& e : monomials_of_degree(n, static_cast<int>(d))) {
    bool killed = false;
    for (const auto& g : monomial_gens) {
      const Monomial& gm = g.lead().m;
      bool div = true;
      for (int v = 0; v < n; ++v)
        if (e[v] < gm.e[v]) { div = false; break; }
      if (div) { killed = true; break; }
    }
    if (!killed) ++count;
  }
  return count;
}

// Exactness of a complete finite free resolution against the rank oracle:
// at every interior index the image of the incoming map fills the kernel of
// the outgoing one, degree by degree.
void check_resolution_exact(const PolyRing<F>& R, const FreeComplex<F>& c,
                            const std::vector<Poly<F>>& monomial_gens,
                            long long maxdeg) {
  const int n = static_cast<int>(R.nvars());
  for (long long d = 0; d <= maxdeg; ++d) {
    for (long long i = 1; i <= c.hi(); ++i) {
      long long rk_out = graded_rank(R, c.map_at(i), d);
      long long rk_in = graded_rank(R, c.map_at(i + 1), d);
      long long dim_i = graded_dim(c.module_at(i), n, d);
      CHECK(rk_out + rk_in == dim_i);  // kernel == image at index i
    }
    // cokernel of d_1 matches the direct monomial count
    long long h0 = graded_dim(c.module_at(0), n, d) - graded_rank(R, c.map_at(1), d);
    CHECK(h0 == quotient_count(R, monomial_gens, d));
  }
}

}  // namespace

TEST_CASE("resolution of a two-generator monomial ideal quotient") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  FreeComplex<F> res = free_resolution(R, M.pres, 4, {});
  CHECK(res.complete);
  CHECK(complex_ranks(res) == std::vector<size_t>{1, 2, 1});
  // differentials compose to zero on the nose
  for (long long i = 1; i < res.hi(); ++i) {
    ModuleMap<F> dd = compose(R, res.map_at(i), res.map_at(i + 1));
    for (const auto& row : dd.a)
      for (const auto& e : row) CHECK(e.is_zero());
  }
  check_resolution_exact(R, res, {P(R, "x*y"), P(R, "x*z")}, 7);
}

TEST_CASE("resolution of the irrelevant-maximal quotient is the full Koszul shape") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x"), P(R, "y"), P(R, "z")}, "k");
  FreeComplex<F> res = free_resolution(R, M.pres, 5, {});
  CHECK(res.complete);
  CHECK(complex_ranks(res) == std::vector<size_t>{1, 3, 3, 1});
  check_resolution_exact(R, res, {P(R, "x"), P(R, "y"), P(R, "z")}, 6);
}

TEST_CASE("resolution of a height-two determinantal-style quotient") {
  auto R = ring3();
  std::vector<Poly<F>> gens{P(R, "x^2"), P(R, "x*y"), P(R, "y^2")};
  auto M = cyclic_module(R, gens, "M");
  FreeComplex<F> res = free_resolution(R, M.pres, 4, {});
  CHECK(res.complete);
  CHECK(complex_ranks(res) == std::vector<size_t>{1, 3, 2});
  check_resolution_exact(R, res, gens, 7);
  // minimality: no unit entries anywhere in the differentials
  for (long long i = 1; i <= res.hi(); ++i)
    for (const auto& row : res.map_at(i).a)
      for (const auto& e : row)
        if (!e.is_zero()) CHECK(e.degree() >= 1);
}

TEST_CASE("betti numbers of standard examples") {
  auto R = ring3();
  auto betti = [&](std::vector<Poly<F>> gens) {
    return betti_numbers(R, cyclic_module(R, std::move(gens), "M").pres, 5, {});
  };
  CHECK(betti({P(R, "x*y"), P(R, "x*z")}) == std::vector<size_t>{1, 2, 1});
  CHECK(betti({P(R, "x"), P(R, "y")}) == std::vector<size_t>{1, 2, 1});
  CHECK(betti({P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}) ==
        std::vector<size_t>{1, 3, 2});
  CHECK(betti({P(R, "x"), P(R, "y"), P(R, "z")}) ==
        std::vector<size_t>{1, 3, 3, 1});
  CHECK(betti({}) == std::vector<size_t>{1});

  // betti numbers are an invariant of the module, not the chosen generators:
  // a redundant generator and shuffled relations minimize away
  auto M1 = cyclic_module(
      R, {P(R, "x*y"), P(R, "x*z"), P(R, "x*y + x*z")}, "redundant");
  CHECK(betti_numbers(R, M1.pres, 5, {}) == std::vector<size_t>{1, 2, 1});
}

TEST_CASE("koszul complex on a regular sequence resolves the quotient") {
  auto R = ring3();
  FreeComplex<F> K = koszul_complex(R, {P(R, "x"), P(R, "y"), P(R, "z")}, {});
  CHECK(complex_ranks(K) == std::vector<size_t>{1, 3, 3, 1});
  check_resolution_exact(R, K, {P(R, "x"), P(R, "y"), P(R, "z")}, 5);
  // twists follow subset degree sums: top generator sits in degree 3
  CHECK(K.module_at(3).twists == std::vector<long long>{3});
}

TEST_CASE("koszul homology detects a non-regular sequence") {
  auto R = ring3();
  auto Rmod = cyclic_module(R, {}, "R");
  FreeComplex<F> K = koszul_complex(R, {P(R, "x"), P(R, "x*y")}, {});
  auto H1 = complex_homology(K, 1, Rmod, {});
  CHECK_FALSE(module_is_zero(H1));
  CHECK(mu(H1) == 1);
  CHECK(ideal_equal(annihilator(H1), make_ideal(R, {P(R, "x")})));
  // on a regular sequence the same homology vanishes
  FreeComplex<F> Kreg = koszul_complex(R, {P(R, "x"), P(R, "y")}, {});
  CHECK(module_is_zero(complex_homology(Kreg, 1, Rmod, {})));
}

TEST_CASE("dualizing a complex is an involution") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}, "M");
  FreeComplex<F> res = free_resolution(R, M.pres, 4, {});
  FreeComplex<F> dual = hom_transpose(res);
  FreeComplex<F> back = hom_transpose(dual);
  REQUIRE(back.mods.size() == res.mods.size());
  CHECK(back.lo == res.lo);
  for (long long i = res.lo; i <= res.hi(); ++i) {
    CHECK(back.module_at(i) == res.module_at(i));
    if (i > res.lo)
      CHECK(map_entries_equal(R, back.map_at(i), res.map_at(i)));
  }
  // dual modules carry negated twists
  CHECK(dual.module_at(res.lo + res.hi()).twists ==
        std::vector<long long>{0});
}

TEST_CASE("transposing a map twice returns the original") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "M");
  FreeComplex<F> res = free_resolution(R, M.pres, 3, {});
  ModuleMap<F> d2 = res.map_at(2);
  ModuleMap<F> tt = transpose_map(R, transpose_map(R, d2));
  CHECK(tt.source == d2.source);
  CHECK(tt.target == d2.target);
  CHECK(map_entries_equal(R, tt, d2));
}

TEST_CASE("complex construction validates its input") {
  auto R = ring3();
  FreeModule f0 = FreeModule::free_of_rank(1);
  ModuleMap<F> dx = map_from_columns(R, f0, {Vec<F>{P(R, "x")}});
  // adjacent module mismatch
  CHECK_THROWS_AS(
      make_complex(R, 0, {f0, FreeModule::free_of_rank(2)}, {dx}, true, {}),
      UsageError);
  // x then x does not square to zero over the free ring ...
  ModuleMap<F> dx2 = make_map(
      R, FreeModule::free_of_rank(1, 2), dx.source,
      {{P(R, "x")}}, "step");
  CHECK_THROWS_AS(
      make_complex(R, 0, {f0, dx.source, dx2.source}, {dx, dx2}, true, {}),
      UsageError);
  // ... but the same data is a genuine complex modulo x^2
  auto Q = make_ring(F{}, {"x", "y", "z"}, {P(R, "x^2")});
  ModuleMap<F> qdx = map_from_columns(Q, f0, {Vec<F>{P(Q, "x")}});
  ModuleMap<F> qdx2 = make_map(Q, FreeModule::free_of_rank(1, 2), qdx.source,
                               {{P(Q, "x")}}, "step");
  CHECK_NOTHROW(
      make_complex(Q, 0, {f0, qdx.source, qdx2.source}, {qdx, qdx2}, true, {}));
}

TEST_CASE("resolution over a quotient ring truncates at the window") {
  auto R = ring3();
  auto Q = make_ring(F{}, {"x", "y", "z"},
                     {P(R, "x^2"), P(R, "x*y"), P(R, "x*z")});
  auto M = cyclic_module(Q, {P(Q, "x")}, "M");
  FreeComplex<F> res = free_resolution(Q, M.pres, 3, {});
  CHECK_FALSE(res.complete);
  CHECK(complex_ranks(res) == std::vector<size_t>{1, 1, 3, 6});
  // differentials still square to zero in the quotient
  for (long long i = 1; i < res.hi(); ++i) {
    ModuleMap<F> dd = compose(Q, res.map_at(i), res.map_at(i + 1));
    for (const auto& row : dd.a)
      for (const auto& e : row)
        CHECK(reduce_mod_quotient(Q, e, {}).is_zero());
  }
}

TEST_CASE("presentations minimize to a canonical form") {
  auto R = ring3();
  auto A = cyclic_module(R, {P(R, "x*y"), P(R, "x*z")}, "A");
  auto B = cyclic_module(
      R, {P(R, "x*z"), P(R, "x*y"), P(R, "2*x*y + x*z")}, "B");
  CHECK(same_canonical_presentation(A, B, {}));
  auto Cm = cyclic_module(R, {P(R, "x"), P(R, "y")}, "C");
  CHECK_FALSE(same_canonical_presentation(A, Cm, {}));
  // minimizing twice changes nothing
  ModuleMap<F> m1 = minimize_presentation(R, B.pres);
  ModuleMap<F> m2 = minimize_presentation(R, m1);
  CHECK(m1.source == m2.source);
  CHECK(m1.target == m2.target);
  CHECK(map_entries_equal(R, m1, m2));
}

TEST_CASE("applying maps is linear and respects composition") {
  auto R = ring3();
  auto M = cyclic_module(R, {P(R, "x"), P(R, "y"), P(R, "z")}, "k");
  FreeComplex<F> res = free_resolution(R, M.pres, 4, {});
  ModuleMap<F> d2 = res.map_at(2), d1 = res.map_at(1);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> expo(0, 2), coef(-3, 3);
  for (int it = 0; it < 10; ++it) {
    Vec<F> v(d2.cols()), w(d2.cols());
    for (size_t j = 0; j < d2.cols(); ++j) {
      std::vector<int> e(3);
      for (auto& q : e) q = expo(rng);
      v[j] = poly_from_terms(
          R.field, R.order,
          {{make_monomial(e, R.weights), mpq_class(coef(rng) * 2 + 1)}});
      for (auto& q : e) q = expo(rng);
      w[j] = poly_from_terms(
          R.field, R.order,
          {{make_monomial(e, R.weights), mpq_class(coef(rng) * 2 + 1)}});
    }
    Vec<F> lhs = apply_map(R, d2, vec_add(R, v, w));
    Vec<F> rhs = vec_add(R, apply_map(R, d2, v), apply_map(R, d2, w));
    CHECK(vec_is_zero(vec_sub(R, lhs, rhs)));
    // d1(d2(v)) = 0
    CHECK(vec_is_zero(apply_map(R, d1, apply_map(R, d2, v))));
  }
}
