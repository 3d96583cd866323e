#pragma once

#include "complexes.hpp"
#include "ideal_ops.hpp"

namespace extscope {

// Finitely presented graded module M = coker(pres : F_1 -> F_0), with lazily
// computed minimal presentation and annihilator shared across copies.
template <class F>
struct PresentedModule {
  PolyRing<F> ring;
  ModuleMap<F> pres;
  std::string label = "module";
  Memo<ModuleMap<F>> minimal;
  Memo<Ideal<F>> ann;
};

template <class F>
PresentedModule<F> make_module(const PolyRing<F>& R, ModuleMap<F> pres,
                               std::string label = "module") {
  PresentedModule<F> m;
  m.ring = R;
  // revalidate shape and grading
  m.pres = make_map(R, pres.source, pres.target, pres.a, "presentation");
  m.label = std::move(label);
  return m;
}

template <class F>
PresentedModule<F> zero_module(const PolyRing<F>& R) {
  return make_module(R, zero_map<F>(FreeModule{}, FreeModule{}), "zero");
}

// A free module, presented with no relations.
template <class F>
PresentedModule<F> free_presented(const PolyRing<F>& R, const FreeModule& fm,
                                  std::string label = "free") {
  return make_module(R, zero_map<F>(FreeModule{}, fm), std::move(label));
}

// R^1 / (gens): one generator in degree 0, one relation per listed element.
template <class F>
PresentedModule<F> cyclic_module(const PolyRing<F>& R,
                                 const std::vector<Poly<F>>& gens,
                                 std::string label = "cyclic") {
  FreeModule f0 = FreeModule::free_of_rank(1);
  std::vector<Vec<F>> cols;
  for (const auto& g : gens) {
    Poly<F> r = reduce_mod_quotient(R, g);
    if (!r.is_zero()) cols.push_back(Vec<F>{r});
  }
  return make_module(R, map_from_columns(R, f0, cols, std::nullopt, "cyclic"),
                     std::move(label));
}

// The ideal (gens) viewed as a module: generators are a minimal generating
// set of the ideal, relations are their syzygies.
template <class F>
PresentedModule<F> ideal_module(const PolyRing<F>& R,
                                const std::vector<Poly<F>>& gens,
                                std::string label = "ideal",
                                const GBOptions& opts = {}) {
  std::vector<Vec<F>> asvec;
  for (const auto& g : gens) asvec.push_back(Vec<F>{g});
  FreeModule ambient = FreeModule::free_of_rank(1);
  std::vector<Vec<F>> mingens =
      minimalize_generators(R, ambient, std::move(asvec), opts);
  if (mingens.empty()) return zero_module(R);
  FreeModule f0;
  for (const auto& g : mingens)
    f0.twists.push_back(vec_degree(ambient, g, "ideal generator").value());
  auto syz = syzygies(R, ambient, mingens, opts);
  return make_module(R, map_from_columns(R, f0, syz, std::nullopt, "ideal"),
                     std::move(label));
}

template <class F>
PresentedModule<F> coker_module(const PolyRing<F>& R, ModuleMap<F> pres,
                                std::string label = "coker") {
  return make_module(R, std::move(pres), std::move(label));
}

template <class F>
PresentedModule<F> module_direct_sum(const PresentedModule<F>& a,
                                     const PresentedModule<F>& b) {
  require_same_ring(a.ring, b.ring, "module_direct_sum");
  const PolyRing<F>& R = a.ring;
  FreeModule f0 = direct_sum(a.pres.target, b.pres.target);
  FreeModule f1 = direct_sum(a.pres.source, b.pres.source);
  std::vector<std::vector<Poly<F>>> e(f0.rank(), std::vector<Poly<F>>(f1.rank()));
  for (size_t i = 0; i < a.pres.rows(); ++i)
    for (size_t j = 0; j < a.pres.cols(); ++j) e[i][j] = a.pres.a[i][j];
  size_t ri = a.pres.rows(), rj = a.pres.cols();
  for (size_t i = 0; i < b.pres.rows(); ++i)
    for (size_t j = 0; j < b.pres.cols(); ++j) e[ri + i][rj + j] = b.pres.a[i][j];
  return make_module(R, make_map(R, f1, f0, std::move(e), "direct sum"),
                     a.label + "+" + b.label);
}

template <class F>
const ModuleMap<F>& minimal_presentation(const PresentedModule<F>& M) {
  return M.minimal.get([&] { return minimize_presentation(M.ring, M.pres); });
}

// Minimal number of generators.
template <class F>
size_t mu(const PresentedModule<F>& M) {
  return minimal_presentation(M).target.rank();
}

template <class F>
bool module_is_zero(const PresentedModule<F>& M) {
  return mu(M) == 0;
}

// Ann(M) = {a : a*M = 0}, intersected one generator at a time: the a with
// a*e_i in im(pres) are read off the first coordinates of syzygies of
// [e_i | relation columns].
template <class F>
Ideal<F> annihilator(const PresentedModule<F>& M, const GBOptions& opts = {}) {
  return M.ann.get([&] {
    const PolyRing<F>& R = M.ring;
    const ModuleMap<F>& p = minimal_presentation(M);
    if (p.target.rank() == 0) return unit_ideal(R);
    auto cols = map_columns(p);
    std::optional<Ideal<F>> acc;
    for (size_t i = 0; i < p.target.rank(); ++i) {
      std::vector<Vec<F>> list;
      list.push_back(vec_unit(R, p.target, i));
      for (const auto& c : cols) list.push_back(c);
      auto syz = syzygies(R, p.target, list, opts);
      std::vector<Poly<F>> first;
      for (const auto& s : syz)
        if (!s[0].is_zero()) first.push_back(s[0]);
      Ideal<F> comp =
          make_ideal(R, detail::simplify_generators(R, std::move(first), opts));
      acc = acc ? ideal_intersect(*acc, comp, opts) : comp;
      if (ideal_is_zero(*acc, opts)) break;  // already as small as possible
    }
    return *acc;
  });
}

// ker/im as an abstract presented module: generators are the kernel
// generators, relations express the boundary generators in those coordinates
// together with the syzygies among the kernel generators themselves.
template <class F>
PresentedModule<F> subquotient(const PolyRing<F>& R, const FreeModule& fm,
                               const std::vector<Vec<F>>& ker_gens,
                               const std::vector<Vec<F>>& im_gens,
                               std::string label = "subquotient",
                               const GBOptions& opts = {}) {
  std::vector<Vec<F>> kg;
  for (const auto& g : ker_gens) {
    Vec<F> r(g.size());
    bool nonzero = false;
    for (size_t i = 0; i < g.size(); ++i) {
      r[i] = reduce_mod_quotient(R, g[i], opts);
      if (!r[i].is_zero()) nonzero = true;
    }
    if (nonzero) kg.push_back(std::move(r));
  }
  if (kg.empty()) {
    for (const auto& d : im_gens) {
      Vec<F> r(d.size());
      for (size_t i = 0; i < d.size(); ++i)
        r[i] = reduce_mod_quotient(R, d[i], opts);
      if (!vec_is_zero(r))
        throw InternalError("subquotient: boundary outside zero kernel");
    }
    return zero_module(R);
  }
  auto kgb = module_basis(R, fm, kg, opts);
  FreeModule f0;
  for (const auto& g : kg)
    f0.twists.push_back(vec_degree(fm, g, "kernel generator").value());
  std::vector<Vec<F>> rel_cols;
  for (const auto& d : im_gens) {
    Vec<F> r(d.size());
    for (size_t i = 0; i < d.size(); ++i)
      r[i] = reduce_mod_quotient(R, d[i], opts);
    if (vec_is_zero(r)) continue;
    if (!in_submodule(R, kgb, r))
      throw InternalError("subquotient: boundary outside kernel");
    auto coords = express_in(R, fm, kg, r, opts);
    if (!coords)
      throw InternalError("subquotient: no expression for a boundary");
    rel_cols.push_back(*coords);
  }
  for (auto& s : syzygies(R, fm, kg, opts)) rel_cols.push_back(std::move(s));
  return make_module(
      R, map_from_columns(R, f0, rel_cols, std::nullopt, "subquotient"),
      std::move(label));
}

// Canonical matrix form used for literal equality of modules produced by the
// same pipeline: minimal presentation with the relation columns replaced by
// their reduced basis (canonical coordinate representatives, fixed order).
template <class F>
ModuleMap<F> canonical_presentation(const PresentedModule<F>& M,
                                    const GBOptions& opts = {}) {
  const PolyRing<F>& R = M.ring;
  const ModuleMap<F>& p = minimal_presentation(M);
  if (p.target.rank() == 0) return p;
  auto basis = module_basis(R, p.target, map_columns(p), opts);
  std::vector<Vec<F>> cols;
  for (const auto& e : basis.elems) {
    Vec<F> r(e.size());
    bool nonzero = false;
    for (size_t i = 0; i < e.size(); ++i) {
      r[i] = reduce_mod_quotient(R, e[i], opts);
      if (!r[i].is_zero()) nonzero = true;
    }
    if (nonzero) cols.push_back(std::move(r));
  }
  return map_from_columns(R, p.target, cols, std::nullopt,
                          "canonical presentation");
}

template <class F>
bool same_canonical_presentation(const PresentedModule<F>& A,
                                 const PresentedModule<F>& B,
                                 const GBOptions& opts = {}) {
  require_same_ring(A.ring, B.ring, "same_canonical_presentation");
  ModuleMap<F> a = canonical_presentation(A, opts);
  ModuleMap<F> b = canonical_presentation(B, opts);
  if (!(a.target == b.target) || !(a.source == b.source)) return false;
  return map_entries_equal(A.ring, a, b);
}

}  // namespace extscope
