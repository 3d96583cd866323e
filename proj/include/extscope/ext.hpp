#pragma once

#include "presented.hpp"

namespace extscope {

// ---------------------------------------------------------------------------
// Homology of  A --phi--> B --psi--> C  tensored with a coefficient module
// N = coker(q), taken at B:   ker(psi (x) N) / im(phi (x) N).
//
// With X_B = B (x) N_0 (N_0 the free cover of N), an element of the kernel is
// a v in X_B with (psi (x) id)(v) inside im(C (x) q); such v are read off the
// leading block of syzygies of the combined column list. Boundaries are the
// columns of (phi (x) id) together with B (x) q. The result is their
// subquotient presentation.
// ---------------------------------------------------------------------------
template <class F>
PresentedModule<F> homology_at(const PolyRing<F>& R, const ModuleMap<F>& phi,
                               const ModuleMap<F>& psi,
                               const PresentedModule<F>& N,
                               std::string label = "homology",
                               const GBOptions& opts = {}) {
  require_same_ring(R, N.ring, "homology_at");
  if (!(phi.target == psi.source))
    throw UsageError("homology_at: maps are not consecutive");
  const FreeModule& B = psi.source;
  const FreeModule& N0 = N.pres.target;
  if (B.rank() == 0 || N0.rank() == 0) return zero_module(R);

  ModuleMap<F> psiN = tensor_identity(R, psi, N0);  // X_B -> X_C
  std::vector<Vec<F>> ker;
  if (psiN.target.rank() == 0) {
    for (size_t j = 0; j < psiN.source.rank(); ++j)
      ker.push_back(vec_unit(R, psiN.source, j));
  } else {
    std::vector<Vec<F>> cols = map_columns(psiN);
    const size_t nb = cols.size();
    ModuleMap<F> relC = identity_tensor(R, psi.target, N.pres);  // C (x) q
    for (auto& c : map_columns(relC)) cols.push_back(std::move(c));
    for (const auto& s : syzygies(R, psiN.target, cols, opts)) {
      Vec<F> v(nb);
      for (size_t j = 0; j < nb; ++j) v[j] = s[j];
      if (!vec_is_zero(v)) ker.push_back(std::move(v));
    }
  }

  std::vector<Vec<F>> im;
  ModuleMap<F> phiN = tensor_identity(R, phi, N0);  // X_A -> X_B
  for (auto& c : map_columns(phiN)) im.push_back(std::move(c));
  ModuleMap<F> relB = identity_tensor(R, B, N.pres);  // B (x) q -> X_B
  for (auto& c : map_columns(relB)) im.push_back(std::move(c));

  return subquotient(R, psiN.source, ker, im, std::move(label), opts);
}

// Ext^i(M, N) from an already computed free resolution of M, as the homology
// of the dualized resolution tensored with N. The resolution must either be
// complete or reach index i+1.
template <class F>
PresentedModule<F> ext_from_resolution(const FreeComplex<F>& res,
                                       const PresentedModule<F>& N,
                                       long long i,
                                       const GBOptions& opts = {}) {
  const PolyRing<F>& R = res.ring;
  if (i < 0) return zero_module(R);
  if (!res.complete && res.hi() < i + 1)
    throw WindowError("ext: resolution reaches index " +
                      std::to_string(res.hi()) + " but index " +
                      std::to_string(i + 1) + " is needed; raise the window");
  if (res.module_at(i).rank() == 0 || module_is_zero(N))
    return zero_module(R);
  ModuleMap<F> phi = transpose_map(R, res.map_at(i));      // F_{i-1}* -> F_i*
  ModuleMap<F> psi = transpose_map(R, res.map_at(i + 1));  // F_i* -> F_{i+1}*
  return homology_at(R, phi, psi, N, "Ext^" + std::to_string(i), opts);
}

template <class F>
PresentedModule<F> ext_module(const PresentedModule<F>& M,
                              const PresentedModule<F>& N, long long i,
                              const GBOptions& opts = {}) {
  require_same_ring(M.ring, N.ring, "ext");
  if (i < 0 || module_is_zero(M) || module_is_zero(N))
    return zero_module(M.ring);
  FreeComplex<F> res = free_resolution(M.ring, M.pres, i + 1, opts);
  return ext_from_resolution(res, N, i, opts);
}

// Iterated Ext along a path (i_1, ..., i_p), applied right to left: the LAST
// index applies to M first, the first index last. The empty path returns M.
// Zero results short-circuit the remaining steps.
template <class F>
PresentedModule<F> iterated_ext(const PresentedModule<F>& M,
                                const PresentedModule<F>& N,
                                const std::vector<long long>& path,
                                const GBOptions& opts = {}) {
  PresentedModule<F> cur = M;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (module_is_zero(cur)) return zero_module(M.ring);
    cur = ext_module(cur, N, *it, opts);
  }
  return cur;
}

// H_j of a free complex with coefficients in N (e.g. Koszul homology).
template <class F>
PresentedModule<F> complex_homology(const FreeComplex<F>& c, long long j,
                                    const PresentedModule<F>& N,
                                    const GBOptions& opts = {}) {
  if (!c.complete && j + 1 > c.hi())
    throw WindowError(
        "complex_homology: the stored window ends at index " +
        std::to_string(c.hi()) + ", cannot take homology at " +
        std::to_string(j));
  if (c.module_at(j).rank() == 0 || module_is_zero(N))
    return zero_module(c.ring);
  return homology_at(c.ring, c.map_at(j + 1), c.map_at(j), N,
                     "H_" + std::to_string(j), opts);
}

}  // namespace extscope
