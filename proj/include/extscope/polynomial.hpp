#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace extscope {

template <class F>
struct Term {
  Monomial m;
  typename F::Elem c;
};

// Sparse polynomial: terms sorted strictly descending in the active order,
// all coefficients nonzero. The empty term list is the zero polynomial.
template <class F>
struct Poly {
  std::vector<Term<F>> t;

  bool is_zero() const { return t.empty(); }
  const Term<F>& lead() const {
    if (t.empty()) throw InternalError("lead term of zero polynomial");
    return t.front();
  }
  // Maximal weighted degree over all terms (not just the lead: elimination
  // orders need not put a maximal-degree term first).
  long long degree() const {
    long long d = -1;
    for (const auto& tm : t) d = std::max(d, tm.m.deg);
    return d;
  }
};

template <class F>
Poly<F> poly_zero() {
  return {};
}

template <class F>
Poly<F> poly_from_terms(const F& field, const MonomialOrder& ord,
                        std::vector<Term<F>> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const Term<F>& a, const Term<F>& b) {
                     return ord.cmp(a.m, b.m) > 0;
                   });
  Poly<F> r;
  for (auto& tm : terms) {
    if (field.is_zero(tm.c)) continue;
    if (!r.t.empty() && r.t.back().m == tm.m) {
      r.t.back().c = field.add(r.t.back().c, tm.c);
      if (field.is_zero(r.t.back().c)) r.t.pop_back();
    } else {
      r.t.push_back(std::move(tm));
    }
  }
  return r;
}

template <class F>
Poly<F> poly_const(const F& field, size_t nvars, const typename F::Elem& c) {
  Poly<F> r;
  if (!field.is_zero(c)) r.t.push_back({mono_one(nvars), c});
  return r;
}

template <class F>
Poly<F> poly_add(const F& field, const MonomialOrder& ord, const Poly<F>& a,
                 const Poly<F>& b) {
  Poly<F> r;
  r.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() && j < b.t.size()) {
    int c = ord.cmp(a.t[i].m, b.t[j].m);
    if (c > 0) {
      r.t.push_back(a.t[i++]);
    } else if (c < 0) {
      r.t.push_back(b.t[j++]);
    } else {
      auto s = field.add(a.t[i].c, b.t[j].c);
      if (!field.is_zero(s)) r.t.push_back({a.t[i].m, s});
      ++i, ++j;
    }
  }
  for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
  for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
  return r;
}

template <class F>
Poly<F> poly_neg(const F& field, const Poly<F>& a) {
  Poly<F> r = a;
  for (auto& tm : r.t) tm.c = field.neg(tm.c);
  return r;
}

template <class F>
Poly<F> poly_sub(const F& field, const MonomialOrder& ord, const Poly<F>& a,
                 const Poly<F>& b) {
  return poly_add(field, ord, a, poly_neg(field, b));
}

template <class F>
Poly<F> poly_scale(const F& field, const Poly<F>& a,
                   const typename F::Elem& c) {
  if (field.is_zero(c)) return {};
  Poly<F> r = a;
  for (auto& tm : r.t) tm.c = field.mul(tm.c, c);
  return r;
}

// a * (c * m): order-preserving, no re-sort needed.
template <class F>
Poly<F> poly_mul_term(const F& field, const Poly<F>& a, const Monomial& m,
                      const typename F::Elem& c) {
  if (field.is_zero(c)) return {};
  Poly<F> r = a;
  for (auto& tm : r.t) {
    tm.m = mono_mul(tm.m, m);
    tm.c = field.mul(tm.c, c);
  }
  return r;
}

template <class F>
Poly<F> poly_mul(const F& field, const MonomialOrder& ord, const Poly<F>& a,
                 const Poly<F>& b) {
  std::vector<Term<F>> acc;
  acc.reserve(a.t.size() * b.t.size());
  for (const auto& ta : a.t)
    for (const auto& tb : b.t)
      acc.push_back({mono_mul(ta.m, tb.m), field.mul(ta.c, tb.c)});
  return poly_from_terms(field, ord, std::move(acc));
}

template <class F>
Poly<F> poly_pow(const F& field, const MonomialOrder& ord, const Poly<F>& a,
                 long e) {
  if (e < 0) throw UsageError("negative polynomial power");
  if (e == 0) {
    if (a.is_zero()) throw UsageError("0^0 is undefined here");
    return poly_const(field, a.t.front().m.e.size(), field.one());
  }
  Poly<F> r = a;
  for (long i = 1; i < e; ++i) r = poly_mul(field, ord, r, a);
  return r;
}

template <class F>
bool poly_eq(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (a.t.size() != b.t.size()) return false;
  for (size_t i = 0; i < a.t.size(); ++i)
    if (!(a.t[i].m == b.t[i].m) || !field.eq(a.t[i].c, b.t[i].c)) return false;
  return true;
}

template <class F>
Poly<F> poly_monic(const F& field, const Poly<F>& a) {
  if (a.is_zero()) return a;
  return poly_scale(field, a, field.inv(a.lead().c));
}

// Weighted-degree homogeneity. Zero is homogeneous of every degree.
struct HomogeneityResult {
  bool homogeneous = true;
  bool zero = false;
  long long degree = 0;         // meaningful when homogeneous && !zero
  long long other_degree = 0;   // a second witness degree when inhomogeneous
};

template <class F>
HomogeneityResult homogeneity(const Poly<F>& f) {
  HomogeneityResult r;
  if (f.is_zero()) {
    r.zero = true;
    return r;
  }
  r.degree = f.t.front().m.deg;
  for (const auto& tm : f.t) {
    if (tm.m.deg != r.degree) {
      r.homogeneous = false;
      r.other_degree = tm.m.deg;
      return r;
    }
  }
  return r;
}

// Multivariate division: f = sum quotients[i] * divisors[i] + remainder,
// no remainder term divisible by any divisor lead term. Every term of the
// intermediate is reduced, so the remainder is the full normal form.
template <class F>
struct DivisionResult {
  std::vector<Poly<F>> quotients;
  Poly<F> remainder;
};

template <class F>
DivisionResult<F> divide_with_remainder(const F& field, const MonomialOrder& ord,
                                        const Poly<F>& f,
                                        const std::vector<Poly<F>>& divisors) {
  DivisionResult<F> res;
  res.quotients.assign(divisors.size(), Poly<F>{});
  Poly<F> work = f;
  std::vector<Term<F>> rem_terms;
  while (!work.is_zero()) {
    const Term<F>& lt = work.lead();
    bool reduced = false;
    for (size_t i = 0; i < divisors.size(); ++i) {
      const Poly<F>& g = divisors[i];
      if (g.is_zero()) continue;
      if (!mono_divides(g.lead().m, lt.m)) continue;
      Monomial qm = mono_quot(lt.m, g.lead().m);
      auto qc = field.div(lt.c, g.lead().c);
      res.quotients[i] = poly_add(
          field, ord, res.quotients[i],
          poly_mul_term(field, poly_const(field, qm.e.size(), field.one()), qm,
                        qc));
      work = poly_sub(field, ord, work, poly_mul_term(field, g, qm, qc));
      reduced = true;
      break;
    }
    if (!reduced) {
      rem_terms.push_back(lt);
      work.t.erase(work.t.begin());
    }
  }
  res.remainder = poly_from_terms(field, ord, std::move(rem_terms));
  return res;
}

}  // namespace extscope
