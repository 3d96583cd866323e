#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ext.hpp"

namespace extscope {

// ---------------------------------------------------------------------------
// Hilbert series
// ---------------------------------------------------------------------------

// Integer Laurent polynomial in one variable t: exponent -> coefficient.
using Laurent = std::map<long long, mpz_class>;

// numer / prod_w (1 - t^w), one factor per entry of denom. Kept uncancelled:
// the denominator always lists every ring variable's weight.
struct HilbertSeries {
  Laurent numer;
  std::vector<long long> denom;
};

namespace detail {

inline void lp_add_term(Laurent& a, long long e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, fresh] = a.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

inline Laurent lp_mul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) lp_add_term(r, ea + eb, ca * cb);
  return r;
}

inline Laurent lp_one_minus_tw(long long w) {
  Laurent r;
  r[0] = 1;
  r[w] = -1;
  return r;
}

// Exact division by (1 - t): the quotient's coefficient at e is the prefix
// sum of the dividend up to e. The coefficients must sum to zero, otherwise
// the quotient would not be a polynomial.
inline Laurent lp_div_one_minus_t(const Laurent& a) {
  Laurent q;
  if (a.empty()) return q;
  const long long lo = a.begin()->first, hi = a.rbegin()->first;
  mpz_class run = 0;
  for (long long e = lo; e < hi; ++e) {
    auto it = a.find(e);
    if (it != a.end()) run += it->second;
    lp_add_term(q, e, run);
  }
  if (run + a.rbegin()->second != 0)
    throw InternalError("series division left a remainder");
  return q;
}

// Multiplicity of the root t = 1.
inline long long lp_order_at_one(Laurent a) {
  long long ord = 0;
  while (!a.empty()) {
    mpz_class s = 0;
    for (const auto& [e, c] : a) s += c;
    if (s != 0) return ord;
    a = lp_div_one_minus_t(a);
    ++ord;
  }
  throw InternalError("order at one of the zero polynomial");
}

inline std::string lp_str(const Laurent& a) {
  if (a.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : a) {
    mpz_class mag = c < 0 ? mpz_class(-c) : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    bool coeff = mag != 1 || e == 0;
    if (coeff) s += mag.get_str();
    if (e != 0) {
      if (coeff) s += "*";
      s += "t";
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace detail

// Equality as rational functions, by cross multiplication.
inline bool hs_equal(const HilbertSeries& x, const HilbertSeries& y) {
  Laurent lhs = x.numer;
  for (long long w : y.denom) lhs = detail::lp_mul(lhs, detail::lp_one_minus_tw(w));
  Laurent rhs = y.numer;
  for (long long w : x.denom) rhs = detail::lp_mul(rhs, detail::lp_one_minus_tw(w));
  return lhs == rhs;
}

// Equality up to an overall degree shift: true when t^k * x == y as rational
// functions for some integer k. Generator degrees of Hom modules move with the
// twists of the chosen presentation, so shift-free comparisons are reserved
// for cases where the identification is itself degree-preserving.
inline bool hs_equal_shifted(const HilbertSeries& x, const HilbertSeries& y) {
  Laurent lhs = x.numer;
  for (long long w : y.denom) lhs = detail::lp_mul(lhs, detail::lp_one_minus_tw(w));
  Laurent rhs = y.numer;
  for (long long w : x.denom) rhs = detail::lp_mul(rhs, detail::lp_one_minus_tw(w));
  if (lhs.empty() || rhs.empty()) return lhs.empty() && rhs.empty();
  const long long k = rhs.begin()->first - lhs.begin()->first;
  Laurent moved;
  for (const auto& [e, c] : lhs) moved.emplace(e + k, c);
  return moved == rhs;
}

inline std::string hs_str(const HilbertSeries& h) {
  std::string num = detail::lp_str(h.numer);
  if (h.denom.empty() || h.numer.empty()) return num;
  std::map<long long, int> grouped;
  for (long long w : h.denom) grouped[w]++;
  std::string den;
  for (const auto& [w, k] : grouped) {
    den += "(1-t";
    if (w != 1) den += "^" + std::to_string(w);
    den += ")";
    if (k != 1) den += "^" + std::to_string(k);
  }
  bool wrap = h.numer.size() > 1;
  return (wrap ? "(" + num + ")" : num) + "/" + den;
}

// Dimension read off the series: the pole order at t = 1. Each denominator
// factor (1 - t^w) carries exactly one root there. Zero series: -1.
inline long long hs_dimension(const HilbertSeries& h) {
  if (h.numer.empty()) return -1;
  return static_cast<long long>(h.denom.size()) - detail::lp_order_at_one(h.numer);
}

namespace detail {

// Numerator of the series of S/(m_1,...,m_k) for monomials m_i, over the
// common denominator: inclusion-exclusion over least common multiples.
template <class F>
Laurent mono_ideal_numerator(const PolyRing<F>& R,
                             const std::vector<Monomial>& gens) {
  if (gens.size() > 20)
    throw ComputationError("series numerator: too many lead terms (" +
                           std::to_string(gens.size()) + " > 20)");
  const size_t k = gens.size();
  std::vector<Monomial> lcms(size_t{1} << k);
  lcms[0] = mono_one(R.nvars());
  Laurent numer;
  numer[0] = 1;
  for (size_t mask = 1; mask < lcms.size(); ++mask) {
    size_t low = mask & (~mask + 1);
    size_t bit = static_cast<size_t>(std::countr_zero(low));
    lcms[mask] = mono_lcm(lcms[mask ^ low], gens[bit], R.weights);
    bool odd = (std::popcount(mask) & 1) != 0;
    lp_add_term(numer, lcms[mask].deg, odd ? -1 : 1);
  }
  return numer;
}

// Lead terms of a module presentation: the minimal presentation's columns
// (plus the quotient relations in every coordinate) completed to a basis,
// leads collected per coordinate. Everything degreewise about the module is
// read off this monomial data.
template <class F>
struct LeadData {
  FreeModule fm;                                // target of the presentation
  std::vector<std::vector<Monomial>> per_pos;   // minimal lead monomials
};

template <class F>
LeadData<F> lead_data(const PresentedModule<F>& M, const GBOptions& opts) {
  const ModuleMap<F>& p = minimal_presentation(M);
  LeadData<F> ld;
  ld.fm = p.target;
  ld.per_pos.resize(p.target.rank());
  if (p.target.rank() == 0) return ld;
  auto gb = module_basis(M.ring, p.target, map_columns(p), opts);
  for (const auto& e : gb.elems) {
    VecLead<F> l = vec_lead(e);
    ld.per_pos[l.pos].push_back(l.m);
  }
  for (auto& gens : ld.per_pos) {
    std::vector<Monomial> kept;
    for (const auto& m : gens) {
      bool redundant = false;
      for (const auto& o : gens)
        if (!(o == m) && mono_divides(o, m)) redundant = true;
      if (!redundant &&
          std::find(kept.begin(), kept.end(), m) == kept.end())
        kept.push_back(m);
    }
    gens = std::move(kept);
  }
  return ld;
}

// Largest variable set containing no generator's support; -1 if 1 is among
// the generators (empty support kills the whole coordinate).
inline long long mono_set_dimension(size_t nvars,
                                    const std::vector<Monomial>& gens) {
  if (nvars > 20)
    throw ComputationError("dimension search: too many variables");
  std::vector<std::set<int>> supports;
  for (const auto& m : gens) {
    std::set<int> s;
    for (size_t i = 0; i < m.e.size(); ++i)
      if (m.e[i] > 0) s.insert(static_cast<int>(i));
    if (s.empty()) return -1;
    supports.push_back(std::move(s));
  }
  long long best = 0;
  for (size_t mask = 0; mask < (size_t{1} << nvars); ++mask) {
    std::set<int> T;
    for (size_t i = 0; i < nvars; ++i)
      if (mask & (size_t{1} << i)) T.insert(static_cast<int>(i));
    bool ok = true;
    for (const auto& s : supports)
      if (std::includes(T.begin(), T.end(), s.begin(), s.end())) {
        ok = false;
        break;
      }
    if (ok) best = std::max(best, static_cast<long long>(T.size()));
  }
  return best;
}

template <class F>
HilbertSeries hs_from_leads(const PolyRing<F>& R, const LeadData<F>& ld) {
  HilbertSeries h;
  h.denom = R.weights;
  for (size_t i = 0; i < ld.per_pos.size(); ++i) {
    Laurent part = mono_ideal_numerator(R, ld.per_pos[i]);
    long long tw = ld.fm.twists.empty() ? 0 : ld.fm.twists[i];
    for (const auto& [e, c] : part) lp_add_term(h.numer, e + tw, c);
  }
  return h;
}

}  // namespace detail

// Hilbert series of a presented module, from the lead terms of its minimal
// presentation. With cross_check set (free ring, finite resolution), the
// alternating sum over a minimal resolution must give the same series.
template <class F>
HilbertSeries hilbert_series(const PresentedModule<F>& M,
                             const GBOptions& opts = {},
                             bool cross_check = false) {
  const PolyRing<F>& R = M.ring;
  HilbertSeries h = detail::hs_from_leads(R, detail::lead_data(M, opts));
  if (cross_check && !R.is_quotient()) {
    FreeComplex<F> res =
        free_resolution(R, M.pres, static_cast<long long>(R.nvars()) + 1, opts);
    if (res.complete) {
      HilbertSeries alt;
      alt.denom = R.weights;
      for (size_t k = 0; k < res.mods.size(); ++k) {
        const FreeModule& fm = res.mods[k];
        for (size_t j = 0; j < fm.rank(); ++j) {
          long long tw = fm.twists.empty() ? 0 : fm.twists[j];
          detail::lp_add_term(alt.numer, tw, (k & 1) ? -1 : 1);
        }
      }
      if (!hs_equal(h, alt))
        throw InternalError(
            "hilbert series: lead-term and resolution routes disagree");
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Dimension, depth, grade
// ---------------------------------------------------------------------------

// Krull dimension of the ring itself.
template <class F>
long long ring_dimension(const PolyRing<F>& R, const GBOptions& opts = {}) {
  return krull_dimension(zero_ideal(R), opts);
}

// Krull dimension of the support, by two independent routes: the largest
// variable set avoiding every lead-term support (per coordinate), and the
// pole order of the Hilbert series. They must agree. Zero module: -1.
template <class F>
long long module_dimension(const PresentedModule<F>& M,
                           const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  auto ld = detail::lead_data(M, opts);
  long long by_leads = -1;
  for (const auto& gens : ld.per_pos)
    by_leads = std::max(by_leads, detail::mono_set_dimension(R.nvars(), gens));
  long long by_series = hs_dimension(detail::hs_from_leads(R, ld));
  if (by_leads != by_series)
    throw InternalError("module dimension: lead-term route gave " +
                        std::to_string(by_leads) + ", series route gave " +
                        std::to_string(by_series));
  return by_leads;
}

// Length of the longest N-regular sequence inside the ideal generated by the
// given elements, read off where Koszul homology starts to vanish: with n
// elements, the homology at n - g is the last nonzero one. Conventions:
// kInfinity when N is zero or the elements act invertibly on N.
template <class F>
int grade_on(const PolyRing<F>& R, const std::vector<Poly<F>>& elements,
             const PresentedModule<F>& N, const GBOptions& opts = {}) {
  if (module_is_zero(N)) return kInfinity;
  std::vector<Poly<F>> fs;
  for (const auto& f : elements) {
    Poly<F> r = reduce_mod_quotient(R, f, opts);
    if (!r.is_zero()) fs.push_back(std::move(r));
  }
  if (fs.empty()) return 0;
  FreeComplex<F> K = koszul_complex(R, fs, opts);
  const long long n = static_cast<long long>(fs.size());
  for (long long j = n; j >= 0; --j)
    if (!module_is_zero(complex_homology(K, j, N, opts)))
      return static_cast<int>(n - j);
  return kInfinity;
}

// Depth: grade of the maximal homogeneous ideal, via the Koszul complex on
// the (surviving) variables. kInfinity for the zero module.
template <class F>
int depth_of(const PresentedModule<F>& M, const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  std::vector<Poly<F>> vars;
  for (size_t i = 0; i < R.nvars(); ++i) vars.push_back(poly_var<F>(R, i));
  return grade_on(R, vars, M, opts);
}

namespace detail {

template <class F>
PresentedModule<F> ring_as_module(const PolyRing<F>& R) {
  return free_presented(R, FreeModule::free_of_rank(1), "R");
}

}  // namespace detail

// Grade of the annihilator on the ring, by two independent routes: the first
// index where the dual-resolution homology is nonzero, and the Koszul route
// on annihilator generators. They must agree. kInfinity for the zero module.
template <class F>
int grade_of(const PresentedModule<F>& M, const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  if (module_is_zero(M)) return kInfinity;
  const long long n = static_cast<long long>(R.nvars());
  FreeComplex<F> res = free_resolution(R, M.pres, n + 1, opts);
  PresentedModule<F> RR = detail::ring_as_module(R);
  int by_ext = -1;
  for (long long i = 0; i <= n; ++i)
    if (!module_is_zero(ext_from_resolution(res, RR, i, opts))) {
      by_ext = static_cast<int>(i);
      break;
    }
  if (by_ext < 0)
    throw InternalError("grade: no nonzero dual within the variable count");
  int by_koszul = grade_on(R, annihilator(M, opts).gens, RR, opts);
  if (by_ext != by_koszul)
    throw InternalError("grade: dual route gave " + std::to_string(by_ext) +
                        ", Koszul route gave " + std::to_string(by_koszul));
  return by_ext;
}

// ---------------------------------------------------------------------------
// Annihilator-derived ideals
// ---------------------------------------------------------------------------

// Intersection of the annihilators of the positive-index duals, i = 1..upto.
// Meaningful up to radical (the radical of the intersection equals the
// intersection of the radicals); compare results with radical_ideal_equal.
template <class F>
Ideal<F> gamma_ideal(const PresentedModule<F>& M, long long upto,
                     const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  Ideal<F> acc = unit_ideal(R);
  if (module_is_zero(M) || upto < 1) return acc;
  FreeComplex<F> res = free_resolution(R, M.pres, upto + 1, opts);
  PresentedModule<F> RR = detail::ring_as_module(R);
  for (long long i = 1; i <= upto; ++i) {
    PresentedModule<F> e = ext_from_resolution(res, RR, i, opts);
    if (module_is_zero(e)) continue;  // unit annihilator adds no constraint
    Ideal<F> a = annihilator(e, opts);
    acc = ideal_is_unit(acc, opts) ? a : ideal_intersect(acc, a, opts);
    if (ideal_is_zero(acc, opts)) break;
  }
  return acc;
}

// Product of the annihilators of the duals, i = 0..upto. A single faithful
// dual (annihilator zero) collapses the product to the zero ideal; vanishing
// duals contribute the unit ideal and drop out.
template <class F>
Ideal<F> hann_ideal(const PresentedModule<F>& M, long long upto,
                    const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  Ideal<F> acc = unit_ideal(R);
  if (module_is_zero(M) || upto < 0) return acc;
  FreeComplex<F> res = free_resolution(R, M.pres, upto + 1, opts);
  PresentedModule<F> RR = detail::ring_as_module(R);
  for (long long i = 0; i <= upto; ++i) {
    PresentedModule<F> e = ext_from_resolution(res, RR, i, opts);
    if (module_is_zero(e)) continue;
    Ideal<F> a = annihilator(e, opts);
    if (ideal_is_zero(a, opts)) return zero_ideal(R);
    acc = ideal_product(acc, a, opts);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Associated primes of monomial quotients (brute-force oracle)
// ---------------------------------------------------------------------------

// Associated primes of S/I for a monomial ideal I over a free ring, by
// sweeping monomial witnesses m dividing the lcm of the generators and
// keeping those whose colon (I : m) is generated by plain variables.
template <class F>
std::vector<VarPrime> monomial_ass(const Ideal<F>& I,
                                   const GBOptions& opts = {}) {
  const PolyRing<F>& R = I.ring;
  if (R.is_quotient() || !is_monomial_ideal(I))
    throw ComputationError(
        "associated-prime sweep needs a monomial ideal over a free ring");
  if (ideal_is_unit(I, opts)) return {};
  // minimal monomial generators
  std::vector<Monomial> gens;
  for (const auto& g : I.gens) gens.push_back(g.t.front().m);
  {
    std::vector<Monomial> kept;
    for (const auto& m : gens) {
      bool redundant = false;
      for (const auto& o : gens)
        if (!(o == m) && mono_divides(o, m)) redundant = true;
      if (!redundant && std::find(kept.begin(), kept.end(), m) == kept.end())
        kept.push_back(m);
    }
    gens = std::move(kept);
  }
  Monomial big = mono_one(R.nvars());
  for (const auto& m : gens)
    big = mono_lcm(big, m, R.weights);
  unsigned long long count = 1;
  for (int e : big.e) {
    count *= static_cast<unsigned long long>(e) + 1;
    if (count > 1'000'000)
      throw ComputationError("associated-prime sweep: too many divisors");
  }
  std::set<VarPrime> found;
  std::vector<int> exps(R.nvars(), 0);
  for (unsigned long long step = 0; step < count; ++step) {
    Monomial m = make_monomial(exps, R.weights);
    // advance the odometer for the next round
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < big.e[i]) {
        ++exps[i];
        break;
      }
      exps[i] = 0;
    }
    bool inside = false;
    for (const auto& g : gens)
      if (mono_divides(g, m)) {
        inside = true;
        break;
      }
    if (inside) continue;  // colon is the unit ideal
    // colon generators g / gcd(g, m), minimalized
    std::vector<Monomial> colon;
    for (const auto& g : gens)
      colon.push_back(mono_quot(g, mono_gcd(g, m, R.weights)));
    std::vector<Monomial> min;
    for (const auto& c : colon) {
      bool redundant = false;
      for (const auto& o : colon)
        if (!(o == c) && mono_divides(o, c)) redundant = true;
      if (!redundant && std::find(min.begin(), min.end(), c) == min.end())
        min.push_back(c);
    }
    bool prime = true;
    VarPrime p;
    for (const auto& c : min) {
      int var = -1, total = 0;
      for (size_t i = 0; i < c.e.size(); ++i) {
        total += c.e[i];
        if (c.e[i] > 0) var = static_cast<int>(i);
      }
      if (total != 1) {
        prime = false;
        break;
      }
      p.push_back(var);
    }
    if (!prime) continue;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    found.insert(std::move(p));
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Structured checks
// ---------------------------------------------------------------------------

// Does the support of the pair match the union of the duals' supports? The
// window runs to the dimension of N; equality is tested at radical level.
template <class F>
struct SupportCheckReport {
  long long window = -1;  // dim N
  Ideal<F> sum_ann;       // Ann M + Ann N
  Ideal<F> meet_ann;      // intersection of Ann of the duals, i = 0..window
  bool equal = false;
};

template <class F>
SupportCheckReport<F> homological_support_check(const PresentedModule<F>& M,
                                                const PresentedModule<F>& N,
                                                const GBOptions& opts = {}) {
  require_same_ring(M.ring, N.ring, "homological_support_check");
  const PolyRing<F>& R = M.ring;
  SupportCheckReport<F> rep{-1, unit_ideal(R), unit_ideal(R), false};
  rep.window = module_dimension(N, opts);
  rep.sum_ann = ideal_sum(annihilator(M, opts), annihilator(N, opts), opts);
  if (rep.window >= 0) {
    FreeComplex<F> res = free_resolution(R, M.pres, rep.window + 1, opts);
    for (long long i = 0; i <= rep.window; ++i) {
      PresentedModule<F> e = ext_from_resolution(res, N, i, opts);
      if (module_is_zero(e)) continue;
      Ideal<F> a = annihilator(e, opts);
      rep.meet_ann = ideal_is_unit(rep.meet_ann, opts)
                         ? a
                         : ideal_intersect(rep.meet_ann, a, opts);
    }
  }
  rep.equal = radical_ideal_equal(rep.sum_ann, rep.meet_ann, opts);
  return rep;
}

// Dimension bounds and the codimension formula for the duals against R.
template <class F>
struct DimFormulaReport {
  long long ring_dim = 0;               // d
  long long module_dim = -1;            // r
  int grade = 0;                        // g (kInfinity for the zero module)
  bool codim_hypothesis = false;        // g == d - r
  std::vector<long long> ext_dims;      // dim of the i-th dual, i = 0..d
  bool bounds_hold = false;             // dim Ext^i <= d - i throughout
  bool dim_matches_module = false;      // dim Ext^g == r
  bool dim_matches_complement = false;  // dim Ext^g == d - g
  bool conclusion = false;              // hypothesis implies both matches
  bool supp_equal = false;              // rad(Ann Ext^g) == rad(Ann M)
};

template <class F>
DimFormulaReport<F> dim_formula_check(const PresentedModule<F>& M,
                                      const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  DimFormulaReport<F> rep;
  rep.ring_dim = ring_dimension(R, opts);
  rep.module_dim = module_dimension(M, opts);
  rep.grade = grade_of(M, opts);
  const long long d = rep.ring_dim;
  FreeComplex<F> res = free_resolution(R, M.pres, d + 1, opts);
  PresentedModule<F> RR = detail::ring_as_module(R);
  rep.bounds_hold = true;
  std::vector<PresentedModule<F>> exts;
  for (long long i = 0; i <= d; ++i) {
    exts.push_back(ext_from_resolution(res, RR, i, opts));
    rep.ext_dims.push_back(module_dimension(exts.back(), opts));
    if (rep.ext_dims.back() > d - i) rep.bounds_hold = false;
  }
  if (rep.grade != kInfinity && rep.grade <= d) {
    const auto& eg = exts[static_cast<size_t>(rep.grade)];
    long long dg = rep.ext_dims[static_cast<size_t>(rep.grade)];
    rep.codim_hypothesis = rep.grade == d - rep.module_dim;
    rep.dim_matches_module = dg == rep.module_dim;
    rep.dim_matches_complement = dg == d - rep.grade;
    rep.conclusion = !rep.codim_hypothesis ||
                     (rep.dim_matches_module && rep.dim_matches_complement);
    rep.supp_equal =
        radical_ideal_equal(annihilator(eg, opts), annihilator(M, opts), opts);
  } else {
    rep.conclusion = true;  // zero module: nothing to conclude
  }
  return rep;
}

// Associated primes versus minimal primes of the duals' annihilators, for a
// monomial quotient over a free ring.
struct AssIndexEntry {
  long long i = 0;
  bool monomial = false;
  std::vector<VarPrime> min_primes;
};

struct AssReport {
  long long ring_dim = 0;
  long long module_dim = -1;
  std::vector<VarPrime> ass;            // brute-force witnesses
  std::vector<AssIndexEntry> entries;   // per dual index, i = 0..ring_dim
  std::vector<VarPrime> union_min;
  bool contains_ass = false;            // ass inside union_min
  bool equals_ass = false;
  std::vector<VarPrime> refined;        // height-matching primes at i = codim
  bool refined_in_ass = false;
  bool refined_matches_top = false;     // == the height-codim part of ass
};

template <class F>
AssReport ass_oracle(const Ideal<F>& I, const GBOptions& opts = {}) {
  const PolyRing<F>& R = I.ring;
  AssReport rep;
  rep.ring_dim = ring_dimension(R, opts);
  rep.ass = monomial_ass(I, opts);
  PresentedModule<F> M = cyclic_module(R, I.gens, "module");
  rep.module_dim = module_dimension(M, opts);
  FreeComplex<F> res = free_resolution(R, M.pres, rep.ring_dim + 1, opts);
  PresentedModule<F> RR = detail::ring_as_module(R);
  std::set<VarPrime> seen;
  for (long long i = 0; i <= rep.ring_dim; ++i) {
    PresentedModule<F> e = ext_from_resolution(res, RR, i, opts);
    AssIndexEntry entry;
    entry.i = i;
    if (module_is_zero(e)) {
      entry.monomial = true;  // unit annihilator, no primes
    } else {
      Ideal<F> a = annihilator(e, opts);
      entry.monomial = is_monomial_ideal(a);
      if (!entry.monomial)
        throw ComputationError(
            "associated-prime check: a dual annihilator came out non-monomial");
      entry.min_primes = monomial_minimal_primes(a);
      for (const auto& p : entry.min_primes) seen.insert(p);
    }
    rep.entries.push_back(std::move(entry));
  }
  rep.union_min.assign(seen.begin(), seen.end());
  rep.contains_ass = std::all_of(rep.ass.begin(), rep.ass.end(),
                                 [&](const VarPrime& p) { return seen.count(p); });
  rep.equals_ass =
      rep.contains_ass && rep.ass.size() == rep.union_min.size();
  const long long codim = rep.ring_dim - rep.module_dim;
  if (codim >= 0 && codim <= rep.ring_dim && rep.module_dim >= 0) {
    for (const auto& p : rep.entries[static_cast<size_t>(codim)].min_primes)
      if (static_cast<long long>(p.size()) == codim) rep.refined.push_back(p);
    rep.refined_in_ass = std::all_of(
        rep.refined.begin(), rep.refined.end(), [&](const VarPrime& p) {
          return std::find(rep.ass.begin(), rep.ass.end(), p) != rep.ass.end();
        });
    std::vector<VarPrime> top;
    for (const auto& p : rep.ass)
      if (static_cast<long long>(p.size()) == codim) top.push_back(p);
    rep.refined_matches_top = top == rep.refined;
  }
  return rep;
}

// Tail behaviour of the sequence of duals: detect a period in the canonical
// presentations (entries compared literally; degree shifts ignored) and
// collect the minimal primes of the annihilators along one period.
template <class F>
struct EassReport {
  long long window = 0;                 // duals computed for i = 0..window
  bool truncated = false;               // resolution hit the window end
  std::vector<Ideal<F>> anns;           // annihilator of each dual
  long long period = 0;                 // smallest in 1..4, or 0 if none
  long long start = -1;                 // smallest index where it holds
  bool periodic = false;
  std::vector<VarPrime> stable_min;     // union over one period from start
  bool stable_min_valid = false;        // all those annihilators monomial
};

namespace detail {

template <class F>
bool entries_match_ignoring_twists(const PolyRing<F>& R, const ModuleMap<F>& a,
                                   const ModuleMap<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return map_entries_equal(R, a, b);
}

}  // namespace detail

template <class F>
EassReport<F> eass_experiment(const PresentedModule<F>& M, long long window,
                              const GBOptions& opts = {}) {
  if (window < 4)
    throw UsageError("tail experiment: the window must be at least 4");
  const PolyRing<F>& R = M.ring;
  EassReport<F> rep;
  rep.window = window;
  FreeComplex<F> res = free_resolution(R, M.pres, window + 1, opts);
  rep.truncated = !res.complete;
  PresentedModule<F> RR = detail::ring_as_module(R);
  std::vector<ModuleMap<F>> canon;
  for (long long i = 0; i <= window; ++i) {
    PresentedModule<F> e = ext_from_resolution(res, RR, i, opts);
    rep.anns.push_back(module_is_zero(e) ? unit_ideal(R)
                                         : annihilator(e, opts));
    canon.push_back(canonical_presentation(e, opts));
  }
  for (long long p = 1; p <= 4 && !rep.periodic; ++p) {
    for (long long k = 0; k + p <= window; ++k) {
      bool ok = true;
      for (long long i = k; i + p <= window; ++i)
        if (!detail::entries_match_ignoring_twists(
                R, canon[static_cast<size_t>(i)],
                canon[static_cast<size_t>(i + p)])) {
          ok = false;
          break;
        }
      if (ok) {
        rep.period = p;
        rep.start = k;
        rep.periodic = true;
        break;
      }
    }
  }
  if (rep.periodic) {
    rep.stable_min_valid = true;
    std::set<VarPrime> seen;
    for (long long i = rep.start; i < rep.start + rep.period && i <= window;
         ++i) {
      const Ideal<F>& a = rep.anns[static_cast<size_t>(i)];
      if (!is_monomial_ideal(a)) {
        rep.stable_min_valid = false;
        break;
      }
      for (const auto& p : monomial_minimal_primes(a)) seen.insert(p);
    }
    if (rep.stable_min_valid) rep.stable_min.assign(seen.begin(), seen.end());
  }
  return rep;
}

// Generator counts along a finite resolution versus the top dual: the number
// of generators of the last nonzero dual must match the last rank.
template <class F>
struct GenCountReport {
  bool applicable = false;   // finite length within the window
  std::string note;
  long long pd = -1;
  std::vector<size_t> betti;
  size_t mu_module = 0;
  size_t mu_top = 0;         // generator count of the top dual
  bool top_matches = false;  // mu_top == betti.back()
  int grade = 0;
  bool codim2_perfect = false;       // grade == pd == 2
  bool hilbert_burch_shape = false;  // cyclic length-2 case: (1, m, m-1)
};

template <class F>
GenCountReport<F> generator_count_check(const PresentedModule<F>& M,
                                        const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  GenCountReport<F> rep;
  rep.mu_module = mu(M);
  const long long n = static_cast<long long>(R.nvars());
  FreeComplex<F> res = free_resolution(R, M.pres, n + 1, opts);
  rep.betti = complex_ranks(res);
  if (!res.complete) {
    rep.note = "hypotheses failed: no finite resolution within the window";
    return rep;
  }
  if (module_is_zero(M)) {
    rep.note = "hypotheses failed: the zero module has no top dual";
    return rep;
  }
  rep.applicable = true;
  rep.pd = static_cast<long long>(rep.betti.size()) - 1;
  PresentedModule<F> top =
      ext_from_resolution(res, detail::ring_as_module(R), rep.pd, opts);
  rep.mu_top = mu(top);
  rep.top_matches = rep.mu_top == rep.betti.back();
  rep.grade = grade_of(M, opts);
  rep.codim2_perfect = rep.grade == 2 && rep.pd == 2;
  if (!rep.codim2_perfect)
    rep.note = "hypotheses failed: not perfect of codimension two";
  if (rep.pd == 2 && rep.betti[0] == 1)
    rep.hilbert_burch_shape =
        rep.betti[1] >= 1 && rep.betti[2] == rep.betti[1] - 1;
  return rep;
}

// Degree-shift comparison: for i > 0, the i-th dual of the ideal-as-module
// must match the (i+1)-th dual of the cyclic quotient. Matching is judged at
// invariant level (Hilbert series, annihilator, generator count) — this is
// evidence, not an isomorphism certificate.
template <class F>
struct ShiftCheckReport {
  long long i = 0;
  bool both_zero = false;
  bool series_equal = false;
  bool ann_equal = false;
  bool mu_equal = false;
  bool match = false;  // all three invariants agree
  std::string lhs_series, rhs_series;
  Ideal<F> lhs_ann, rhs_ann;
  size_t lhs_mu = 0, rhs_mu = 0;
};

template <class F>
ShiftCheckReport<F> ext_shift_check(const Ideal<F>& I, long long i,
                                    const GBOptions& opts = {}) {
  if (i <= 0) throw UsageError("shift comparison needs a positive index");
  const PolyRing<F>& R = I.ring;
  ShiftCheckReport<F> rep;
  rep.i = i;
  PresentedModule<F> RR = detail::ring_as_module(R);
  PresentedModule<F> lhs = ext_module(ideal_module(R, I.gens, "ideal", opts),
                                      RR, i, opts);
  PresentedModule<F> rhs =
      ext_module(cyclic_module(R, I.gens, "quotient"), RR, i + 1, opts);
  rep.both_zero = module_is_zero(lhs) && module_is_zero(rhs);
  HilbertSeries hl = hilbert_series(lhs, opts), hr = hilbert_series(rhs, opts);
  rep.series_equal = hs_equal(hl, hr);
  rep.lhs_series = hs_str(hl);
  rep.rhs_series = hs_str(hr);
  rep.lhs_ann = annihilator(lhs, opts);
  rep.rhs_ann = annihilator(rhs, opts);
  rep.ann_equal = ideal_equal(rep.lhs_ann, rep.rhs_ann, opts);
  rep.lhs_mu = mu(lhs);
  rep.rhs_mu = mu(rhs);
  rep.mu_equal = rep.lhs_mu == rep.rhs_mu;
  rep.match = rep.series_equal && rep.ann_equal && rep.mu_equal;
  return rep;
}

// ---------------------------------------------------------------------------
// The full invariant bundle
// ---------------------------------------------------------------------------

template <class F>
struct InvariantReport {
  std::string label;
  bool is_zero = false;
  size_t mu = 0;
  long long window = 0;       // resolution window used
  bool resolution_complete = false;
  std::vector<size_t> betti;
  long long pd = -1;          // kInfinity when no finite resolution appears
  int depth = 0;              // kInfinity for the zero module
  int grade = 0;              // kInfinity for the zero module
  long long dim = -1;
  long long ring_dim = 0;
  long long ext_sup = -1;     // largest i in the window with a nonzero dual
  HilbertSeries hilbert;
  Ideal<F> ann;
  Ideal<F> gamma;
  Ideal<F> hann;
  bool cohen_macaulay = false;  // depth == dim (zero module counts)
  bool perfect = false;         // grade == pd, finite
  bool quasi_perfect = false;   // grade == ext_sup within the window
  bool finite_pd = false;
};

template <class F>
InvariantReport<F> compute_invariants(const PresentedModule<F>& M,
                                      const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  const long long n = static_cast<long long>(R.nvars());
  InvariantReport<F> rep{.label = M.label,
                         .is_zero = module_is_zero(M),
                         .mu = mu(M),
                         .window = n + 1,
                         .ann = annihilator(M, opts),
                         .gamma = unit_ideal(R),
                         .hann = unit_ideal(R)};
  FreeComplex<F> res = free_resolution(R, M.pres, rep.window, opts);
  rep.resolution_complete = res.complete;
  rep.betti = complex_ranks(res);
  rep.pd = rep.is_zero ? -1
           : res.complete ? static_cast<long long>(rep.betti.size()) - 1
                          : kInfinity;
  rep.depth = depth_of(M, opts);
  rep.grade = grade_of(M, opts);
  rep.dim = module_dimension(M, opts);
  rep.ring_dim = ring_dimension(R, opts);
  rep.hilbert = hilbert_series(M, opts, /*cross_check=*/true);
  PresentedModule<F> RR = detail::ring_as_module(R);
  for (long long i = 0; i <= n; ++i)
    if (!module_is_zero(ext_from_resolution(res, RR, i, opts)))
      rep.ext_sup = i;
  rep.gamma = gamma_ideal(M, n, opts);
  rep.hann = hann_ideal(M, rep.ring_dim, opts);
  rep.finite_pd = rep.is_zero || res.complete;
  rep.cohen_macaulay =
      rep.is_zero || static_cast<long long>(rep.depth) == rep.dim;
  rep.perfect = !rep.is_zero && rep.pd != kInfinity &&
                static_cast<long long>(rep.grade) == rep.pd;
  rep.quasi_perfect = !rep.is_zero && rep.grade != kInfinity &&
                      static_cast<long long>(rep.grade) == rep.ext_sup;
  return rep;
}

}  // namespace extscope
