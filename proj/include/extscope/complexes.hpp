#pragma once

#include "groebner.hpp"

namespace extscope {

// Chain complex of free graded modules. mods[k] sits in homological index
// lo + k; maps[k] is the differential mods[k+1] -> mods[k]. Out-of-range
// indices behave as rank-zero modules and zero maps.
template <class F>
struct FreeComplex {
  PolyRing<F> ring;
  long long lo = 0;
  std::vector<FreeModule> mods;
  std::vector<ModuleMap<F>> maps;
  // True when the complex is exact beyond its top end (kernels vanish there),
  // i.e. nothing was cut off by a finite computation window.
  bool complete = true;

  long long hi() const { return lo + static_cast<long long>(mods.size()) - 1; }

  FreeModule module_at(long long i) const {
    if (i < lo || i > hi()) return FreeModule{};
    return mods[static_cast<size_t>(i - lo)];
  }

  // d_i : F_i -> F_{i-1}; zero between rank-zero ends when out of range.
  ModuleMap<F> map_at(long long i) const {
    long long k = i - lo;
    if (k >= 1 && k < static_cast<long long>(mods.size()))
      return maps[static_cast<size_t>(k - 1)];
    return zero_map<F>(module_at(i), module_at(i - 1));
  }
};

template <class F>
FreeComplex<F> make_complex(const PolyRing<F>& R, long long lo,
                            std::vector<FreeModule> mods,
                            std::vector<ModuleMap<F>> maps,
                            bool complete = true,
                            const GBOptions& opts = {}) {
  FreeComplex<F> c;
  c.ring = R;
  c.lo = lo;
  c.mods = std::move(mods);
  c.maps = std::move(maps);
  c.complete = complete;
  if (c.mods.empty()) {
    if (!c.maps.empty()) throw UsageError("complex: maps without modules");
    return c;
  }
  if (c.maps.size() + 1 != c.mods.size())
    throw UsageError("complex: need one map per adjacent module pair");
  for (size_t k = 0; k < c.maps.size(); ++k) {
    if (!(c.maps[k].source == c.mods[k + 1]) ||
        !(c.maps[k].target == c.mods[k]))
      throw UsageError("complex: map " + std::to_string(k) +
                       " does not match adjacent modules");
  }
  for (size_t k = 0; k + 1 < c.maps.size(); ++k) {
    ModuleMap<F> dd = compose(R, c.maps[k], c.maps[k + 1]);
    for (size_t i = 0; i < dd.rows(); ++i)
      for (size_t j = 0; j < dd.cols(); ++j)
        if (!reduce_mod_quotient(R, dd.a[i][j], opts).is_zero())
          throw UsageError("complex: consecutive maps do not compose to zero");
  }
  return c;
}

// The dual complex Hom(C, R): transposed matrices, negated twists. Stored on
// the same index range [lo, hi] by reversing, so that the module at index k
// is Hom(F_{lo+hi-k}, R); applying it twice returns the original complex.
template <class F>
FreeComplex<F> hom_transpose(const FreeComplex<F>& c,
                             const GBOptions& opts = {}) {
  const long long m = c.lo + c.hi();
  std::vector<FreeModule> mods;
  std::vector<ModuleMap<F>> maps;
  for (long long k = c.lo; k <= c.hi(); ++k)
    mods.push_back(dual_module(c.module_at(m - k)));
  // map at position k <- k+1 is the transpose of d_{m-k} : F_{m-k} -> F_{m-k-1}
  for (long long k = c.lo; k < c.hi(); ++k)
    maps.push_back(transpose_map(c.ring, c.map_at(m - k)));
  return make_complex(c.ring, c.lo, std::move(mods), std::move(maps),
                      c.complete, opts);
}

// Ranks of the modules, indexed from lo upward.
template <class F>
std::vector<size_t> complex_ranks(const FreeComplex<F>& c) {
  std::vector<size_t> r;
  r.reserve(c.mods.size());
  for (const auto& m : c.mods) r.push_back(m.rank());
  return r;
}

// ---------------------------------------------------------------------------
// Koszul complex on a list of homogeneous elements f_1..f_n:
//   K_k = direct sum of R(-sum of deg f_i over i in T) over k-subsets T,
//   d(e_T) = sum_j (-1)^{j+1} f_{t_j} e_{T minus t_j}   (t_1 < ... < t_k).
// Subsets of equal size are ordered by increasing bitmask.
// ---------------------------------------------------------------------------
template <class F>
FreeComplex<F> koszul_complex(const PolyRing<F>& R,
                              const std::vector<Poly<F>>& fs,
                              const GBOptions& opts = {}) {
  const size_t n = fs.size();
  if (n > 20) throw UsageError("koszul_complex: too many elements");
  std::vector<long long> fdeg(n);
  for (size_t i = 0; i < n; ++i) {
    auto h = homogeneity(fs[i]);
    if (h.zero || !h.homogeneous)
      throw UsageError("koszul_complex: elements must be homogeneous nonzero");
    fdeg[i] = h.degree;
  }
  const uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  std::vector<std::vector<uint32_t>> level(n + 1);
  for (uint32_t m = 0;; ++m) {
    level[static_cast<size_t>(__builtin_popcount(m))].push_back(m);
    if (m == full) break;
  }
  std::vector<size_t> pos(static_cast<size_t>(full) + 1, 0);
  std::vector<FreeModule> mods(n + 1);
  for (size_t k = 0; k <= n; ++k) {
    for (size_t idx = 0; idx < level[k].size(); ++idx) {
      uint32_t m = level[k][idx];
      pos[m] = idx;
      long long tw = 0;
      for (size_t i = 0; i < n; ++i)
        if (m & (1u << i)) tw += fdeg[i];
      mods[k].twists.push_back(tw);
    }
  }
  std::vector<ModuleMap<F>> maps;
  for (size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Poly<F>>> a(
        mods[k - 1].rank(), std::vector<Poly<F>>(mods[k].rank()));
    for (size_t col = 0; col < level[k].size(); ++col) {
      uint32_t m = level[k][col];
      int j = 0;
      for (size_t i = 0; i < n; ++i) {
        if (!(m & (1u << i))) continue;
        ++j;  // i is the j-th smallest member of the subset
        size_t row = pos[m ^ (1u << i)];
        Poly<F> entry = fs[i];
        if (j % 2 == 0) entry = poly_neg(R.field, entry);
        a[row][col] = std::move(entry);
      }
    }
    maps.push_back(make_map(R, mods[k], mods[k - 1], std::move(a), "koszul"));
  }
  return make_complex(R, 0, std::move(mods), std::move(maps), true, opts);
}

// ---------------------------------------------------------------------------
// Presentation cleanup: repeatedly pivot away nonzero constant entries
// (such an entry makes one target generator redundant), then drop zero
// columns. The cokernel is unchanged; the result has no constant entries.
// ---------------------------------------------------------------------------
template <class F>
ModuleMap<F> minimize_presentation(const PolyRing<F>& R, ModuleMap<F> m) {
  const F& k = R.field;
  for (;;) {
    std::optional<std::pair<size_t, size_t>> pivot;
    for (size_t i = 0; i < m.rows() && !pivot; ++i)
      for (size_t j = 0; j < m.cols() && !pivot; ++j) {
        const Poly<F>& e = m.a[i][j];
        if (!e.is_zero() && e.degree() == 0) pivot = {i, j};
      }
    if (!pivot) break;
    auto [pi, pj] = *pivot;
    typename F::Elem cinv = k.inv(m.a[pi][pj].lead().c);
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j == pj || m.a[pi][j].is_zero()) continue;
      // col_j -= (a[pi][j] / a[pi][pj]) * col_pj
      Poly<F> f = poly_scale(k, m.a[pi][j], k.neg(cinv));
      for (size_t i = 0; i < m.rows(); ++i)
        m.a[i][j] = poly_add(k, R.order, m.a[i][j],
                             poly_mul(k, R.order, f, m.a[i][pj]));
    }
    // row pi is now zero outside column pj; drop generator pi, relation pj
    ModuleMap<F> next;
    for (size_t i = 0; i < m.rows(); ++i)
      if (i != pi) next.target.twists.push_back(m.target.twists[i]);
    for (size_t j = 0; j < m.cols(); ++j)
      if (j != pj) next.source.twists.push_back(m.source.twists[j]);
    next.a.assign(next.target.rank(), std::vector<Poly<F>>(next.source.rank()));
    size_t ii = 0;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == pi) continue;
      size_t jj = 0;
      for (size_t j = 0; j < m.cols(); ++j) {
        if (j == pj) continue;
        next.a[ii][jj] = std::move(m.a[i][j]);
        ++jj;
      }
      ++ii;
    }
    m = std::move(next);
  }
  // drop zero and duplicate relations (columns)
  std::vector<Vec<F>> cols;
  std::vector<long long> tw;
  for (size_t j = 0; j < m.cols(); ++j) {
    Vec<F> c = map_column(m, j);
    bool zero = true;
    for (const auto& e : c)
      if (!reduce_mod_quotient(R, e).is_zero()) zero = false;
    if (zero) continue;
    bool dup = false;
    for (const auto& prev : cols)
      if (vec_eq(R, prev, c)) dup = true;
    if (dup) continue;
    tw.push_back(m.source.twists[j]);
    cols.push_back(std::move(c));
  }
  return map_from_columns(R, m.target, cols, tw, "minimized presentation");
}

// Minimal homogeneous generating set of the submodule generated by `gens`,
// extracted greedily in weakly increasing degree (an element already in the
// span of the kept ones is redundant and stays redundant).
template <class F>
std::vector<Vec<F>> minimalize_generators(const PolyRing<F>& R,
                                          const FreeModule& fm,
                                          std::vector<Vec<F>> gens,
                                          const GBOptions& opts = {}) {
  std::vector<Vec<F>> in;
  for (auto& g : gens) {
    Vec<F> r(g.size());
    for (size_t i = 0; i < g.size(); ++i)
      r[i] = reduce_mod_quotient(R, g[i], opts);
    if (!vec_is_zero(r)) in.push_back(std::move(r));
  }
  std::stable_sort(in.begin(), in.end(), [&](const Vec<F>& a, const Vec<F>& b) {
    return vec_degree(fm, a, "generator").value_or(0) <
           vec_degree(fm, b, "generator").value_or(0);
  });
  std::vector<Vec<F>> kept;
  for (auto& g : in) {
    if (!kept.empty()) {
      auto gb = module_basis(R, fm, kept, opts);
      if (in_submodule(R, gb, g)) continue;
    }
    kept.push_back(std::move(g));
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Minimal free resolution of coker(pres) out to homological index `window`:
//   F_window -> ... -> F_1 -> F_0   with all differentials in the maximal
// ideal. Stops early (complete=true) when a kernel vanishes.
// ---------------------------------------------------------------------------
template <class F>
FreeComplex<F> free_resolution(const PolyRing<F>& R, const ModuleMap<F>& pres,
                               long long window, const GBOptions& opts = {}) {
  if (window < 0) throw UsageError("free_resolution: negative window");
  ModuleMap<F> d1 = minimize_presentation(R, pres);
  FreeComplex<F> c;
  c.ring = R;
  c.lo = 0;
  c.mods.push_back(d1.target);
  c.complete = true;
  if (d1.target.rank() == 0) return c;  // the zero module
  FreeModule below = d1.target;
  // generators of ker(F_{step-1} -> previous), in `below` coordinates
  std::vector<Vec<F>> gens = map_columns(d1);
  for (long long step = 1; step <= window; ++step) {
    std::vector<Vec<F>> mingens = minimalize_generators(R, below, gens, opts);
    if (mingens.empty()) return c;  // kernel vanished: resolution ended
    ModuleMap<F> d = map_from_columns(R, below, mingens, std::nullopt,
                                      "resolution differential");
    // minimality check: a constant entry would mean a redundant generator
    for (size_t i = 0; i < d.rows(); ++i)
      for (size_t j = 0; j < d.cols(); ++j)
        if (!d.a[i][j].is_zero() && d.a[i][j].degree() == 0)
          throw InternalError("free_resolution: non-minimal differential");
    c.mods.push_back(d.source);
    c.maps.push_back(d);
    below = d.source;
    gens = syzygies(R, d.target, map_columns(d), opts);
  }
  c.complete = gens.empty();
  return c;
}

// Betti numbers (ranks of a minimal resolution) b_0..b_window of coker(pres).
template <class F>
std::vector<size_t> betti_numbers(const PolyRing<F>& R,
                                  const ModuleMap<F>& pres, long long window,
                                  const GBOptions& opts = {}) {
  return complex_ranks(free_resolution(R, pres, window, opts));
}

}  // namespace extscope
