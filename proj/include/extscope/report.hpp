#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "invariants.hpp"

namespace extscope {

// All machine-readable output goes through ordered_json: keys keep insertion
// order, so equal inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline Json js_int_or_inf(long long v) {
  if (v == kInfinity) return Json("inf");
  return Json(v);
}

template <class F>
Json js_ideal(const Ideal<F>& I) {
  Json a = Json::array();
  for (const auto& g : I.gens) a.push_back(poly_str(I.ring, g));
  return a;
}

template <class F>
Json js_primes(const PolyRing<F>& R, const std::vector<VarPrime>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(prime_str(R, p));
  return a;
}

inline Json js_free_module(const FreeModule& fm) {
  Json j;
  j["rank"] = fm.rank();
  Json tw = Json::array();
  for (size_t i = 0; i < fm.rank(); ++i)
    tw.push_back(fm.twists.empty() ? 0 : fm.twists[i]);
  j["twists"] = tw;
  return j;
}

template <class F>
Json js_matrix(const PolyRing<F>& R, const ModuleMap<F>& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(poly_str(R, m.a[i][j]));
    rows.push_back(row);
  }
  return rows;
}

// A module is serialized through its canonical presentation, so isomorphic
// inputs that normalize identically print identically.
template <class F>
Json js_module(const PresentedModule<F>& M, const GBOptions& opts = {}) {
  ModuleMap<F> p = canonical_presentation(M, opts);
  Json j;
  j["label"] = M.label;
  j["zero"] = module_is_zero(M);
  j["mu"] = mu(M);
  j["generators"] = js_free_module(p.target);
  j["relations"] = js_free_module(p.source);
  j["matrix"] = js_matrix(M.ring, p);
  return j;
}

template <class F>
Json js_complex(const FreeComplex<F>& c) {
  Json j;
  j["lo"] = c.lo;
  j["complete"] = c.complete;
  Json ranks = Json::array(), mods = Json::array(), maps = Json::array();
  for (const auto& fm : c.mods) {
    ranks.push_back(fm.rank());
    mods.push_back(js_free_module(fm));
  }
  for (const auto& m : c.maps) maps.push_back(js_matrix(c.ring, m));
  j["ranks"] = ranks;
  j["modules"] = mods;
  j["maps"] = maps;
  return j;
}

template <class F>
Json js_invariants(const InvariantReport<F>& r) {
  Json j;
  j["label"] = r.label;
  j["zero"] = r.is_zero;
  j["mu"] = r.mu;
  j["window"] = r.window;
  j["resolution_complete"] = r.resolution_complete;
  j["betti"] = r.betti;
  j["pd"] = js_int_or_inf(r.pd);
  j["depth"] = js_int_or_inf(r.depth);
  j["grade"] = js_int_or_inf(r.grade);
  j["dim"] = r.dim;
  j["ring_dim"] = r.ring_dim;
  j["ext_sup"] = r.ext_sup;
  j["hilbert"] = hs_str(r.hilbert);
  j["ann"] = js_ideal(r.ann);
  j["gamma"] = js_ideal(r.gamma);
  j["hann"] = js_ideal(r.hann);
  j["cohen_macaulay"] = r.cohen_macaulay;
  j["perfect"] = r.perfect;
  j["quasi_perfect"] = r.quasi_perfect;
  j["finite_pd"] = r.finite_pd;
  return j;
}

template <class F>
Json js_support_check(const SupportCheckReport<F>& r) {
  Json j;
  j["window"] = r.window;
  j["sum_ann"] = js_ideal(r.sum_ann);
  j["meet_ann"] = js_ideal(r.meet_ann);
  j["equal"] = r.equal;
  return j;
}

template <class F>
Json js_dim_formula(const DimFormulaReport<F>& r) {
  Json j;
  j["ring_dim"] = r.ring_dim;
  j["module_dim"] = r.module_dim;
  j["grade"] = js_int_or_inf(r.grade);
  j["codim_hypothesis"] = r.codim_hypothesis;
  j["ext_dims"] = r.ext_dims;
  j["bounds_hold"] = r.bounds_hold;
  j["dim_matches_module"] = r.dim_matches_module;
  j["dim_matches_complement"] = r.dim_matches_complement;
  j["conclusion"] = r.conclusion;
  j["supp_equal"] = r.supp_equal;
  return j;
}

template <class F>
Json js_ass_report(const PolyRing<F>& R, const AssReport& r) {
  Json j;
  j["ring_dim"] = r.ring_dim;
  j["module_dim"] = r.module_dim;
  j["ass"] = js_primes(R, r.ass);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json je;
    je["i"] = e.i;
    je["monomial"] = e.monomial;
    je["min_primes"] = js_primes(R, e.min_primes);
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["union_min"] = js_primes(R, r.union_min);
  j["contains_ass"] = r.contains_ass;
  j["equals_ass"] = r.equals_ass;
  j["refined"] = js_primes(R, r.refined);
  j["refined_in_ass"] = r.refined_in_ass;
  j["refined_matches_top"] = r.refined_matches_top;
  return j;
}

template <class F>
Json js_eass(const EassReport<F>& r) {
  Json j;
  j["window"] = r.window;
  j["truncated"] = r.truncated;
  Json anns = Json::array();
  for (const auto& a : r.anns) anns.push_back(js_ideal(a));
  j["anns"] = anns;
  j["periodic"] = r.periodic;
  j["period"] = r.period;
  j["start"] = r.start;
  j["stable_min_valid"] = r.stable_min_valid;
  if (!r.anns.empty())
    j["stable_min"] = js_primes(r.anns.front().ring, r.stable_min);
  else
    j["stable_min"] = Json::array();
  return j;
}

template <class F>
Json js_gen_count(const GenCountReport<F>& r) {
  Json j;
  j["applicable"] = r.applicable;
  j["note"] = r.note;
  j["pd"] = r.pd;
  j["betti"] = r.betti;
  j["mu_module"] = r.mu_module;
  j["mu_top"] = r.mu_top;
  j["top_matches"] = r.top_matches;
  j["grade"] = r.grade;
  j["codim2_perfect"] = r.codim2_perfect;
  j["hilbert_burch_shape"] = r.hilbert_burch_shape;
  return j;
}

template <class F>
Json js_shift_check(const ShiftCheckReport<F>& r) {
  Json j;
  j["i"] = r.i;
  j["both_zero"] = r.both_zero;
  j["series_equal"] = r.series_equal;
  j["ann_equal"] = r.ann_equal;
  j["mu_equal"] = r.mu_equal;
  j["match"] = r.match;
  j["lhs_series"] = r.lhs_series;
  j["rhs_series"] = r.rhs_series;
  j["lhs_ann"] = js_ideal(r.lhs_ann);
  j["rhs_ann"] = js_ideal(r.rhs_ann);
  j["lhs_mu"] = r.lhs_mu;
  j["rhs_mu"] = r.rhs_mu;
  return j;
}

// One verification check: a stable name, a verdict, and a short explanation.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline Json js_checks(const std::vector<CheckResult>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    a.push_back(j);
  }
  return a;
}

}  // namespace extscope
