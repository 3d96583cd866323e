#pragma once

#include <algorithm>
#include <set>

#include "groebner.hpp"

namespace extscope {

// Ideal of the ring (which may itself be a quotient), with a cached reduced
// basis. Immutable; copies share the cache.
template <class F>
struct Ideal {
  PolyRing<F> ring;
  std::vector<Poly<F>> gens;
  Memo<GBasis<F>> basis_memo;
};

template <class F>
Ideal<F> make_ideal(const PolyRing<F>& R, std::vector<Poly<F>> gens) {
  Ideal<F> I;
  I.ring = R;
  for (auto& g : gens)
    if (!g.is_zero()) I.gens.push_back(std::move(g));
  return I;
}

template <class F>
Ideal<F> unit_ideal(const PolyRing<F>& R) {
  return make_ideal(R, {poly_const(R.field, R.nvars(), R.field.one())});
}

template <class F>
Ideal<F> zero_ideal(const PolyRing<F>& R) {
  return make_ideal(R, {});
}

template <class F>
const GBasis<F>& ideal_basis(const Ideal<F>& I, const GBOptions& opts = {}) {
  return I.basis_memo.get([&] {
    std::vector<Vec<F>> gens;
    for (const auto& g : I.gens) gens.push_back(Vec<F>{g});
    return module_basis(I.ring, FreeModule::free_of_rank(1), std::move(gens),
                        opts);
  });
}

template <class F>
Poly<F> ideal_nf(const Ideal<F>& I, const Poly<F>& f, const GBOptions& opts = {}) {
  return normal_form(I.ring, ideal_basis(I, opts), Vec<F>{f})[0];
}

template <class F>
bool ideal_contains(const Ideal<F>& I, const Poly<F>& f,
                    const GBOptions& opts = {}) {
  return ideal_nf(I, f, opts).is_zero();
}

// I = (1)? The reduced basis of the unit ideal is {1}.
template <class F>
bool ideal_is_unit(const Ideal<F>& I, const GBOptions& opts = {}) {
  for (const auto& e : ideal_basis(I, opts).elems)
    if (e[0].lead().m.is_one()) return true;
  return false;
}

// I = (0) in the ring (all generators fall into the quotient ideal)?
template <class F>
bool ideal_is_zero(const Ideal<F>& I, const GBOptions& opts = {}) {
  for (const auto& g : I.gens)
    if (!reduce_mod_quotient(I.ring, g, opts).is_zero()) return false;
  return true;
}

template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& K,
                 const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "ideal_equal");
  for (const auto& g : I.gens)
    if (!ideal_contains(K, g, opts)) return false;
  for (const auto& g : K.gens)
    if (!ideal_contains(I, g, opts)) return false;
  return true;
}

namespace detail {

// Canonical generator list: reduce mod quotient, drop zeros and duplicates,
// then drop generators already in the ideal of the remaining ones.
template <class F>
std::vector<Poly<F>> simplify_generators(const PolyRing<F>& R,
                                         std::vector<Poly<F>> gens,
                                         const GBOptions& opts = {}) {
  std::vector<Poly<F>> cur;
  for (auto& g : gens) {
    Poly<F> r = reduce_mod_quotient(R, g, opts);
    if (r.is_zero()) continue;
    r = poly_monic(R.field, r);
    bool dup = false;
    for (const auto& h : cur)
      if (poly_eq(R.field, h, r)) dup = true;
    if (!dup) cur.push_back(std::move(r));
  }
  // sort ascending in the ring order of lead terms for stable output
  std::sort(cur.begin(), cur.end(), [&](const Poly<F>& a, const Poly<F>& b) {
    return R.order.cmp(a.lead().m, b.lead().m) < 0;
  });
  for (size_t i = cur.size(); i-- > 0;) {
    std::vector<Vec<F>> others;
    for (size_t j = 0; j < cur.size(); ++j)
      if (j != i) others.push_back(Vec<F>{cur[j]});
    auto gb = module_basis(R, FreeModule::free_of_rank(1), others, opts);
    if (in_submodule(R, gb, Vec<F>{cur[i]})) cur.erase(cur.begin() + i);
  }
  return cur;
}

// Extend a polynomial into a ring with `extra` new leading variables.
template <class F>
Poly<F> prepend_vars(const Poly<F>& f, size_t extra,
                     const std::vector<long long>& new_weights) {
  Poly<F> r;
  r.t.reserve(f.t.size());
  for (const auto& tm : f.t) {
    std::vector<int> e(extra, 0);
    e.insert(e.end(), tm.m.e.begin(), tm.m.e.end());
    r.t.push_back({make_monomial(std::move(e), new_weights), tm.c});
  }
  return r;
}

// Drop the first `extra` exponents (all zero) of every term.
template <class F>
Poly<F> strip_vars(const Poly<F>& f, size_t extra,
                   const std::vector<long long>& weights) {
  Poly<F> r;
  for (const auto& tm : f.t) {
    std::vector<int> e(tm.m.e.begin() + extra, tm.m.e.end());
    r.t.push_back({make_monomial(std::move(e), weights), tm.c});
  }
  return r;
}

template <class F>
PolyRing<F> tag_ring(const PolyRing<F>& R, const std::string& tag,
                     MonomialOrder order) {
  std::vector<std::string> vars{tag};
  vars.insert(vars.end(), R.vars.begin(), R.vars.end());
  std::vector<long long> weights{1};
  weights.insert(weights.end(), R.weights.begin(), R.weights.end());
  PolyRing<F> T;
  T.field = R.field;
  T.vars = std::move(vars);
  T.weights = std::move(weights);
  T.order = order;
  return T;
}

}  // namespace detail

// (I : f) = {a : a*f in I}, computed from syzygies of [f, gens(I), quotient].
template <class F>
Ideal<F> ideal_quotient_by(const Ideal<F>& I, const Poly<F>& f,
                           const GBOptions& opts = {}) {
  const PolyRing<F>& R = I.ring;
  Poly<F> fr = reduce_mod_quotient(R, f, opts);
  if (fr.is_zero()) return unit_ideal(R);
  PolyRing<F> S = ambient_ring(R);
  std::vector<Vec<F>> list;
  list.push_back(Vec<F>{fr});
  for (const auto& g : I.gens) list.push_back(Vec<F>{g});
  for (const auto& j : R.quotient) list.push_back(Vec<F>{j});
  auto syz = syzygies(S, FreeModule::free_of_rank(1), list, opts);
  std::vector<Poly<F>> out;
  for (const auto& z : syz) out.push_back(z[0]);
  return make_ideal(R, detail::simplify_generators(R, std::move(out), opts));
}

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& I, const Ideal<F>& K,
                   const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "ideal_sum");
  std::vector<Poly<F>> gens = I.gens;
  gens.insert(gens.end(), K.gens.begin(), K.gens.end());
  return make_ideal(I.ring, detail::simplify_generators(I.ring, std::move(gens), opts));
}

template <class F>
Ideal<F> ideal_product(const Ideal<F>& I, const Ideal<F>& K,
                       const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "ideal_product");
  std::vector<Poly<F>> gens;
  for (const auto& a : I.gens)
    for (const auto& b : K.gens)
      gens.push_back(poly_mul(I.ring.field, I.ring.order, a, b));
  return make_ideal(I.ring, detail::simplify_generators(I.ring, std::move(gens), opts));
}

// Intersection by the one-tag trick: (t*I + (1-t)*K) ∩ R, eliminating t with
// a block order. Inhomogeneous intermediate, so this runs capped.
template <class F>
Ideal<F> ideal_intersect(const Ideal<F>& I, const Ideal<F>& K,
                         const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "ideal_intersect");
  const PolyRing<F>& R = I.ring;
  if (ideal_is_zero(I, opts) || ideal_is_zero(K, opts)) return zero_ideal(R);
  PolyRing<F> T = detail::tag_ring(R, "@t", MonomialOrder::elim(1));
  Poly<F> t;
  {
    std::vector<int> e(T.nvars(), 0);
    e[0] = 1;
    t.t.push_back({make_monomial(std::move(e), T.weights), T.field.one()});
  }
  Poly<F> one_minus_t = poly_sub(T.field, T.order,
                                 poly_const(T.field, T.nvars(), T.field.one()), t);
  std::vector<Vec<F>> gens;
  auto add_side = [&](const std::vector<Poly<F>>& side, const Poly<F>& factor) {
    for (const auto& g : side) {
      Poly<F> gt = detail::prepend_vars(g, 1, T.weights);
      gens.push_back(Vec<F>{poly_mul(T.field, T.order, factor, gt)});
    }
    for (const auto& j : R.quotient) {
      Poly<F> jt = detail::prepend_vars(j, 1, T.weights);
      gens.push_back(Vec<F>{poly_mul(T.field, T.order, factor, jt)});
    }
  };
  add_side(I.gens, t);
  add_side(K.gens, one_minus_t);
  auto gb = module_basis(T, FreeModule::free_of_rank(1), std::move(gens), opts);
  std::vector<Poly<F>> out;
  for (const auto& e : gb.elems) {
    bool has_tag = false;
    for (const auto& tm : e[0].t)
      if (tm.m.e[0] != 0) has_tag = true;
    if (!has_tag) out.push_back(detail::strip_vars(e[0], 1, R.weights));
  }
  return make_ideal(R, detail::simplify_generators(R, std::move(out), opts));
}

template <class F>
Ideal<F> ideal_quotient(const Ideal<F>& I, const Ideal<F>& K,
                        const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "ideal_quotient");
  if (K.gens.empty()) return unit_ideal(I.ring);
  std::optional<Ideal<F>> acc;
  for (const auto& f : K.gens) {
    Ideal<F> q = ideal_quotient_by(I, f, opts);
    acc = acc ? ideal_intersect(*acc, q, opts) : q;
  }
  return *acc;
}

// f ∈ rad(I)? Decided by 1 ∈ (I + quotient + (1 - t*f)) in the tagged ring.
template <class F>
bool radical_member(const Ideal<F>& I, const Poly<F>& f,
                    const GBOptions& opts = {}) {
  const PolyRing<F>& R = I.ring;
  Poly<F> fr = reduce_mod_quotient(R, f, opts);
  if (fr.is_zero()) return true;
  PolyRing<F> T = detail::tag_ring(R, "@t", MonomialOrder::degrevlex());
  Poly<F> t;
  {
    std::vector<int> e(T.nvars(), 0);
    e[0] = 1;
    t.t.push_back({make_monomial(std::move(e), T.weights), T.field.one()});
  }
  std::vector<Vec<F>> gens;
  for (const auto& g : I.gens)
    gens.push_back(Vec<F>{detail::prepend_vars(g, 1, T.weights)});
  for (const auto& j : R.quotient)
    gens.push_back(Vec<F>{detail::prepend_vars(j, 1, T.weights)});
  Poly<F> ft = detail::prepend_vars(fr, 1, T.weights);
  gens.push_back(Vec<F>{poly_sub(
      T.field, T.order, poly_const(T.field, T.nvars(), T.field.one()),
      poly_mul(T.field, T.order, t, ft))});
  auto gb = module_basis(T, FreeModule::free_of_rank(1), std::move(gens), opts);
  for (const auto& e : gb.elems)
    if (e[0].lead().m.is_one()) return true;
  return false;
}

// rad(I) == rad(K), by mutual radical membership of generators.
template <class F>
bool radical_ideal_equal(const Ideal<F>& I, const Ideal<F>& K,
                         const GBOptions& opts = {}) {
  require_same_ring(I.ring, K.ring, "radical_ideal_equal");
  for (const auto& g : I.gens)
    if (!radical_member(K, g, opts)) return false;
  for (const auto& g : K.gens)
    if (!radical_member(I, g, opts)) return false;
  return true;
}

// A prime generated by a set of variables; empty set = the zero ideal.
using VarPrime = std::vector<int>;

template <class F>
bool is_monomial_ideal(const Ideal<F>& I) {
  for (const auto& g : I.gens)
    if (g.t.size() != 1) return false;
  for (const auto& j : I.ring.quotient)
    if (j.t.size() != 1) return false;
  return true;
}

namespace detail {

inline std::vector<VarPrime> min_primes_rec(
    std::vector<std::set<int>> supports) {
  // drop supersets among the remaining supports (harmless, speeds recursion)
  for (const auto& s : supports)
    if (s.empty()) return {};  // unit generator: no primes
  if (supports.empty()) return {VarPrime{}};
  // smallest support first
  size_t pick = 0;
  for (size_t i = 1; i < supports.size(); ++i)
    if (supports[i].size() < supports[pick].size()) pick = i;
  std::vector<VarPrime> out;
  for (int v : supports[pick]) {
    std::vector<std::set<int>> rest;
    for (const auto& s : supports)
      if (!s.count(v)) rest.push_back(s);
    for (auto p : min_primes_rec(std::move(rest))) {
      p.push_back(v);
      std::sort(p.begin(), p.end());
      out.push_back(std::move(p));
    }
  }
  // minimize and dedupe
  std::sort(out.begin(), out.end(), [](const VarPrime& a, const VarPrime& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<VarPrime> min;
  for (const auto& p : out) {
    bool contains_smaller = false;
    for (const auto& q : min) {
      if (std::includes(p.begin(), p.end(), q.begin(), q.end()))
        contains_smaller = true;
    }
    if (!contains_smaller && !(std::find(min.begin(), min.end(), p) != min.end()))
      min.push_back(p);
  }
  return min;
}

}  // namespace detail

// Minimal primes of a monomial ideal (quotient generators included), by
// recursive variable splitting. Non-monomial input is refused loudly.
template <class F>
std::vector<VarPrime> monomial_minimal_primes(const Ideal<F>& I) {
  if (!is_monomial_ideal(I))
    throw ComputationError(
        "minimal primes are implemented for monomial ideals only");
  if (ideal_is_unit(I)) return {};
  std::vector<std::set<int>> supports;
  auto add = [&](const Poly<F>& g) {
    std::set<int> s;
    for (size_t i = 0; i < g.t.front().m.e.size(); ++i)
      if (g.t.front().m.e[i] > 0) s.insert(static_cast<int>(i));
    supports.push_back(std::move(s));
  };
  for (const auto& g : I.gens) add(g);
  for (const auto& j : I.ring.quotient) add(j);
  return detail::min_primes_rec(std::move(supports));
}

template <class F>
std::string ideal_str(const Ideal<F>& I) {
  if (I.gens.empty()) return "(0)";
  std::string s = "(";
  for (size_t i = 0; i < I.gens.size(); ++i) {
    if (i) s += ", ";
    s += poly_str(I.ring, I.gens[i]);
  }
  return s + ")";
}

template <class F>
std::string prime_str(const PolyRing<F>& R, const VarPrime& p) {
  if (p.empty()) return "(0)";
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += R.vars[static_cast<size_t>(p[i])];
  }
  return s + ")";
}

// Combinatorial Krull dimension of R/I: the largest set of variables missing
// the support of every lead monomial of a basis of I (+ quotient).
template <class F>
int krull_dimension(const Ideal<F>& I, const GBOptions& opts = {}) {
  if (ideal_is_unit(I, opts)) return -1;  // empty variety
  const PolyRing<F>& R = I.ring;
  const auto& gb = ideal_basis(I, opts);
  std::vector<std::set<int>> supports;
  for (const auto& e : gb.elems) {
    std::set<int> s;
    const Monomial& m = vec_lead(e).m;
    for (size_t i = 0; i < m.e.size(); ++i)
      if (m.e[i] > 0) s.insert(static_cast<int>(i));
    supports.push_back(std::move(s));
  }
  size_t n = R.nvars();
  int best = 0;
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    std::set<int> T;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t{1} << i)) T.insert(static_cast<int>(i));
    bool ok = true;
    for (const auto& s : supports) {
      if (std::includes(T.begin(), T.end(), s.begin(), s.end())) {
        ok = false;  // T contains the full support of a lead monomial
        break;
      }
    }
    if (ok) best = std::max(best, static_cast<int>(T.size()));
  }
  return best;
}

}  // namespace extscope
