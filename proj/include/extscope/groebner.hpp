#pragma once

#include <cstdlib>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "free_module.hpp"

namespace extscope {

// Degree cap for basis computations: bounds the (untwisted) monomial degree of
// any S-pair lcm the engine processes. Exceeding it throws DegreeCapError.
inline long long default_degree_cap() {
  if (const char* env = std::getenv("EXTSCOPE_DEGREE_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw UsageError("EXTSCOPE_DEGREE_CAP must be a positive integer");
  }
  return 20;
}

struct GBOptions {
  long long cap = -1;  // -1: resolve from environment / default
  long long effective_cap() const { return cap > 0 ? cap : default_degree_cap(); }
};

template <class F>
struct VecLead {
  size_t pos = 0;
  Monomial m;
  typename F::Elem c;
};

// Position-over-term: lower position dominates, ties by the ring order.
template <class F>
VecLead<F> vec_lead(const Vec<F>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return {i, v[i].lead().m, v[i].lead().c};
  throw InternalError("lead of zero vector");
}

// Full normal form of v against basis elements (reduces every term, not just
// the lead), with the reduction multipliers optionally collected.
template <class F>
Vec<F> vec_normal_form(const PolyRing<F>& R, const Vec<F>& v,
                       const std::vector<Vec<F>>& basis,
                       std::vector<Poly<F>>* quotients = nullptr) {
  if (quotients) quotients->assign(basis.size(), Poly<F>{});
  Vec<F> work = v;
  Vec<F> result(v.size());
  std::vector<VecLead<F>> leads;
  leads.reserve(basis.size());
  for (const auto& b : basis) leads.push_back(vec_lead(b));
  while (!vec_is_zero(work)) {
    VecLead<F> lt = vec_lead(work);
    bool reduced = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (leads[i].pos != lt.pos || !mono_divides(leads[i].m, lt.m)) continue;
      Monomial qm = mono_quot(lt.m, leads[i].m);
      auto qc = R.field.div(lt.c, leads[i].c);
      work = vec_sub(R, work, vec_mul_term(R, basis[i], qm, qc));
      if (quotients) {
        Poly<F> q;
        q.t.push_back({qm, qc});
        (*quotients)[i] = poly_add(R.field, R.order, (*quotients)[i], q);
      }
      reduced = true;
      break;
    }
    if (!reduced) {
      // move the irreducible lead term into the result
      result[lt.pos].t.push_back(work[lt.pos].t.front());
      work[lt.pos].t.erase(work[lt.pos].t.begin());
    }
  }
  return result;
}

namespace detail {

// Buchberger completion over the free ring (the quotient ideal, if any, must
// already be appended as extra generators by the caller). Normal selection:
// pairs processed by increasing twisted lcm degree.
template <class F>
std::vector<Vec<F>> buchberger(const PolyRing<F>& R, const FreeModule& fm,
                               const std::vector<Vec<F>>& gens,
                               const GBOptions& opts) {
  const long long cap = opts.effective_cap();
  std::vector<Vec<F>> elems;
  for (const auto& g : gens)
    if (!vec_is_zero(g)) elems.push_back(g);

  std::vector<VecLead<F>> leads;
  for (const auto& e : elems) leads.push_back(vec_lead(e));

  using Key = std::tuple<long long, size_t, size_t>;  // (degree, i, j)
  std::set<Key> queue;
  std::set<std::pair<size_t, size_t>> treated;
  auto pair_key = [&](size_t i, size_t j) {
    Monomial L = mono_lcm(leads[i].m, leads[j].m, R.weights);
    long long tw = fm.twists.empty() ? 0 : fm.twists[leads[i].pos];
    return Key{L.deg + tw, i, j};
  };
  auto push_pairs_for = [&](size_t n) {
    for (size_t i = 0; i < n; ++i)
      if (leads[i].pos == leads[n].pos) queue.insert(pair_key(i, n));
  };
  for (size_t n = 0; n < elems.size(); ++n) push_pairs_for(n);

  const bool rank1 = fm.rank() == 1;
  while (!queue.empty()) {
    auto [deg, i, j] = *queue.begin();
    queue.erase(queue.begin());
    treated.insert({i, j});

    Monomial L = mono_lcm(leads[i].m, leads[j].m, R.weights);
    if (L.deg > cap)
      throw DegreeCapError("degree cap " + std::to_string(cap) +
                           " exceeded at S-pair degree " + std::to_string(L.deg) +
                           " (raise EXTSCOPE_DEGREE_CAP or --degree-cap)");
    // Coprimality criterion is sound only in the rank-one (ideal) case.
    if (rank1 && mono_coprime(leads[i].m, leads[j].m)) continue;
    // Chain criterion: some k with lead dividing the lcm, both companion
    // pairs already treated.
    {
      bool skip = false;
      for (size_t k = 0; k < elems.size() && !skip; ++k) {
        if (k == i || k == j || leads[k].pos != leads[i].pos) continue;
        if (!mono_divides(leads[k].m, L)) continue;
        auto p1 = std::minmax(i, k), p2 = std::minmax(j, k);
        if (treated.count({p1.first, p1.second}) &&
            treated.count({p2.first, p2.second}))
          skip = true;
      }
      if (skip) continue;
    }

    Vec<F> s = vec_sub(
        R,
        vec_mul_term(R, elems[i], mono_quot(L, leads[i].m),
                     R.field.inv(leads[i].c)),
        vec_mul_term(R, elems[j], mono_quot(L, leads[j].m),
                     R.field.inv(leads[j].c)));
    Vec<F> r = vec_normal_form(R, s, elems);
    if (!vec_is_zero(r)) {
      elems.push_back(std::move(r));
      leads.push_back(vec_lead(elems.back()));
      push_pairs_for(elems.size() - 1);
    }
  }
  return elems;
}

// Minimal + tail-reduced + monic + sorted: the reduced basis (unique).
template <class F>
std::vector<Vec<F>> interreduce(const PolyRing<F>& R,
                                std::vector<Vec<F>> elems) {
  // drop elements whose lead is divisible by another element's lead
  std::vector<Vec<F>> kept;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (vec_is_zero(elems[i])) continue;
    VecLead<F> li = vec_lead(elems[i]);
    bool dominated = false;
    for (size_t j = 0; j < elems.size() && !dominated; ++j) {
      if (i == j || vec_is_zero(elems[j])) continue;
      VecLead<F> lj = vec_lead(elems[j]);
      if (lj.pos != li.pos || !mono_divides(lj.m, li.m)) continue;
      if (!(lj.m == li.m)) {
        dominated = true;
      } else {
        // equal leads: keep the earlier one
        dominated = j < i;
      }
    }
    if (!dominated) kept.push_back(elems[i]);
  }
  // tail-reduce to fixpoint
  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<Vec<F>> others;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      Vec<F> r = others.empty() ? kept[i] : vec_normal_form(R, kept[i], others);
      if (!vec_eq(R, r, kept[i])) {
        kept[i] = std::move(r);
        changed = true;
      }
    }
    if (!changed) break;
    if (pass == 999) throw InternalError("interreduction did not stabilize");
  }
  for (auto& e : kept) {
    VecLead<F> l = vec_lead(e);
    e = vec_scale(R, e, R.field.inv(l.c));
  }
  std::sort(kept.begin(), kept.end(), [&](const Vec<F>& a, const Vec<F>& b) {
    VecLead<F> la = vec_lead(a), lb = vec_lead(b);
    if (la.pos != lb.pos) return la.pos < lb.pos;
    return R.order.cmp(la.m, lb.m) < 0;
  });
  return kept;
}

}  // namespace detail

// Completed + reduced basis of a submodule of a graded free module. Over a
// quotient ring the generators are lifted and the quotient relations are
// appended in every coordinate, so normal forms are canonical representatives
// modulo the quotient as well.
template <class F>
struct GBasis {
  FreeModule fm;
  std::vector<Vec<F>> elems;
};

template <class F>
std::vector<Vec<F>> quotient_columns(const PolyRing<F>& R, const FreeModule& fm) {
  std::vector<Vec<F>> cols;
  for (const auto& j : R.quotient)
    for (size_t m = 0; m < fm.rank(); ++m) {
      Vec<F> v(fm.rank());
      v[m] = j;
      cols.push_back(std::move(v));
    }
  return cols;
}

template <class F>
GBasis<F> module_basis(const PolyRing<F>& R, const FreeModule& fm,
                       std::vector<Vec<F>> gens, const GBOptions& opts = {}) {
  for (auto& c : quotient_columns(R, fm)) gens.push_back(std::move(c));
  auto completed = detail::buchberger(R, fm, gens, opts);
  return GBasis<F>{fm, detail::interreduce(R, std::move(completed))};
}

template <class F>
Vec<F> normal_form(const PolyRing<F>& R, const GBasis<F>& gb, const Vec<F>& v) {
  if (gb.elems.empty()) return v;
  return vec_normal_form(R, v, gb.elems);
}

template <class F>
bool in_submodule(const PolyRing<F>& R, const GBasis<F>& gb, const Vec<F>& v) {
  return vec_is_zero(normal_form(R, gb, v));
}

// Reduced basis of the quotient ideal itself, cached on the ring value.
template <class F>
std::shared_ptr<const GBasis<F>> quotient_basis(const PolyRing<F>& R,
                                               const GBOptions& opts = {}) {
  std::lock_guard<std::mutex> lock(R.qcache->mu);
  if (!R.qcache->gb) {
    PolyRing<F> S = ambient_ring(R);
    std::vector<Vec<F>> gens;
    for (const auto& j : R.quotient) gens.push_back(Vec<F>{j});
    auto gb = std::make_shared<GBasis<F>>(
        module_basis(S, FreeModule::free_of_rank(1), std::move(gens), opts));
    R.qcache->gb = gb;
  }
  return std::static_pointer_cast<const GBasis<F>>(R.qcache->gb);
}

// Canonical representative of a coefficient modulo the quotient ideal.
template <class F>
Poly<F> reduce_mod_quotient(const PolyRing<F>& R, const Poly<F>& f,
                            const GBOptions& opts = {}) {
  if (!R.is_quotient() || f.is_zero()) return f;
  auto jb = quotient_basis(R, opts);
  PolyRing<F> S = ambient_ring(R);
  Vec<F> v{f};
  return normal_form(S, *jb, v)[0];
}

namespace detail {

// Graph/tag construction shared by syzygies and expression recovery: elements
// (g_i | e_i) plus untagged quotient columns, under position-over-term with
// ambient positions dominating tag positions.
template <class F>
struct Tagged {
  FreeModule block_fm;
  std::vector<Vec<F>> gens;  // tagged generators then untagged quotient cols
  size_t ambient_rank = 0;
  size_t ngens = 0;
};

template <class F>
Tagged<F> tag_generators(const PolyRing<F>& R, const FreeModule& fm,
                         const std::vector<Vec<F>>& gens) {
  Tagged<F> t;
  t.ambient_rank = fm.rank();
  t.ngens = gens.size();
  std::vector<long long> tag_twists;
  for (size_t i = 0; i < gens.size(); ++i) {
    auto d = vec_degree(fm, gens[i], "syzygy input");
    tag_twists.push_back(d.value_or(0));
  }
  t.block_fm = direct_sum(fm, FreeModule(tag_twists));
  for (size_t i = 0; i < gens.size(); ++i) {
    Vec<F> v(t.block_fm.rank());
    for (size_t p = 0; p < fm.rank(); ++p) v[p] = gens[i][p];
    v[fm.rank() + i] = poly_const(R.field, R.nvars(), R.field.one());
    t.gens.push_back(std::move(v));
  }
  for (auto& c : quotient_columns(R, fm)) {
    Vec<F> v(t.block_fm.rank());
    for (size_t p = 0; p < fm.rank(); ++p) v[p] = c[p];
    t.gens.push_back(std::move(v));
  }
  return t;
}

template <class F>
bool top_is_zero(const Vec<F>& v, size_t ambient_rank) {
  for (size_t p = 0; p < ambient_rank; ++p)
    if (!v[p].is_zero()) return false;
  return true;
}

}  // namespace detail

// Generators of the syzygy module of `gens` (over the ring, quotient-aware):
// all vectors a with sum_i a_i gens_i = 0. Output is the reduced basis of the
// syzygy module — canonical for a given ring, ambient and generator list.
template <class F>
std::vector<Vec<F>> syzygies(const PolyRing<F>& R, const FreeModule& fm,
                             const std::vector<Vec<F>>& gens,
                             const GBOptions& opts = {}) {
  if (gens.empty()) return {};
  auto tagged = detail::tag_generators(R, fm, gens);
  PolyRing<F> S = ambient_ring(R);
  auto completed = detail::buchberger(S, tagged.block_fm, tagged.gens, opts);
  std::vector<Vec<F>> raw;
  for (const auto& e : completed) {
    if (!detail::top_is_zero(e, tagged.ambient_rank)) continue;
    Vec<F> tag(tagged.ngens);
    for (size_t i = 0; i < tagged.ngens; ++i)
      tag[i] = e[tagged.ambient_rank + i];
    if (!vec_is_zero(tag)) raw.push_back(std::move(tag));
  }
  std::vector<long long> tag_twists(
      tagged.block_fm.twists.begin() + tagged.ambient_rank,
      tagged.block_fm.twists.end());
  FreeModule tag_fm(tag_twists);
  // canonicalize over the ring (also reduces coordinates mod the quotient)
  auto basis = module_basis(R, tag_fm, std::move(raw), opts);
  // Elements all of whose coordinates lie in the quotient ideal are zero as
  // ring-level syzygies (e.g. the trivial J-columns themselves): drop them,
  // and return canonical coordinate representatives.
  std::vector<Vec<F>> out;
  for (const auto& e : basis.elems) {
    Vec<F> r(e.size());
    bool nonzero = false;
    for (size_t i = 0; i < e.size(); ++i) {
      r[i] = reduce_mod_quotient(R, e[i], opts);
      if (!r[i].is_zero()) nonzero = true;
    }
    if (nonzero) out.push_back(std::move(r));
  }
  return out;
}

// A finitely generated submodule of a graded free module.
template <class F>
struct Submodule {
  FreeModule fm;
  std::vector<Vec<F>> gens;
};

// Coefficients expressing v as a combination of gens over the ring (modulo
// the quotient), or nothing if v is not in the submodule they generate.
template <class F>
std::optional<std::vector<Poly<F>>> express_in(const PolyRing<F>& R,
                                               const FreeModule& fm,
                                               const std::vector<Vec<F>>& gens,
                                               const Vec<F>& v,
                                               const GBOptions& opts = {}) {
  if (vec_is_zero(v)) return std::vector<Poly<F>>(gens.size());
  if (gens.empty() && !R.is_quotient()) return std::nullopt;
  auto tagged = detail::tag_generators(R, fm, gens);
  PolyRing<F> S = ambient_ring(R);
  auto completed = detail::buchberger(S, tagged.block_fm, tagged.gens, opts);

  std::vector<Vec<F>> reducers;
  std::vector<VecLead<F>> leads;
  for (const auto& e : completed)
    if (!detail::top_is_zero(e, tagged.ambient_rank)) {
      reducers.push_back(e);
      leads.push_back(vec_lead(e));
    }

  Vec<F> work(tagged.block_fm.rank());
  for (size_t p = 0; p < fm.rank(); ++p) work[p] = v[p];
  while (!detail::top_is_zero(work, tagged.ambient_rank)) {
    VecLead<F> lt = vec_lead(work);  // lead lives in the ambient block
    bool reduced = false;
    for (size_t i = 0; i < reducers.size(); ++i) {
      if (leads[i].pos != lt.pos || !mono_divides(leads[i].m, lt.m)) continue;
      Monomial qm = mono_quot(lt.m, leads[i].m);
      auto qc = R.field.div(lt.c, leads[i].c);
      work = vec_sub(S, work, vec_mul_term(S, reducers[i], qm, qc));
      reduced = true;
      break;
    }
    if (!reduced) return std::nullopt;
  }
  std::vector<Poly<F>> coords(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    Poly<F> c = poly_neg(R.field, work[tagged.ambient_rank + i]);
    coords[i] = reduce_mod_quotient(R, c, opts);
  }
  return coords;
}

// Post-hoc certificate: every S-pair of `elems` (no criteria, no shortcuts)
// reduces to zero against the list.
template <class F>
bool verify_basis(const PolyRing<F>& R, const FreeModule& fm,
                  const std::vector<Vec<F>>& elems) {
  std::vector<VecLead<F>> leads;
  for (const auto& e : elems) {
    if (vec_is_zero(e)) return false;
    leads.push_back(vec_lead(e));
  }
  (void)fm;
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j) {
      if (leads[i].pos != leads[j].pos) continue;
      Monomial L = mono_lcm(leads[i].m, leads[j].m, R.weights);
      Vec<F> s = vec_sub(
          R,
          vec_mul_term(R, elems[i], mono_quot(L, leads[i].m),
                       R.field.inv(leads[i].c)),
          vec_mul_term(R, elems[j], mono_quot(L, leads[j].m),
                       R.field.inv(leads[j].c)));
      if (!vec_is_zero(vec_normal_form(R, s, elems))) return false;
    }
  return true;
}

}  // namespace extscope
