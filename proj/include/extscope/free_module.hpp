#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "ring.hpp"

namespace extscope {

// Graded free module: twists[j] is the degree of the j-th basis element, so
// the module is  (+)_j R(-twists[j]).
struct FreeModule {
  std::vector<long long> twists;

  FreeModule() = default;
  explicit FreeModule(std::vector<long long> tw) : twists(std::move(tw)) {}
  static FreeModule free_of_rank(size_t r, long long twist = 0) {
    return FreeModule(std::vector<long long>(r, twist));
  }
  size_t rank() const { return twists.size(); }
  bool operator==(const FreeModule& o) const { return twists == o.twists; }
};

inline FreeModule dual_module(const FreeModule& f) {
  FreeModule d = f;
  for (auto& t : d.twists) t = -t;
  return d;
}

inline FreeModule direct_sum(const FreeModule& a, const FreeModule& b) {
  FreeModule s = a;
  s.twists.insert(s.twists.end(), b.twists.begin(), b.twists.end());
  return s;
}

// Element of a free module: one polynomial per component.
template <class F>
using Vec = std::vector<Poly<F>>;

template <class F>
Vec<F> vec_zero(const FreeModule& fm) {
  return Vec<F>(fm.rank());
}

template <class F>
Vec<F> vec_unit(const PolyRing<F>& R, const FreeModule& fm, size_t j) {
  Vec<F> v(fm.rank());
  v[j] = poly_const(R.field, R.nvars(), R.field.one());
  return v;
}

template <class F>
bool vec_is_zero(const Vec<F>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

template <class F>
Vec<F> vec_add(const PolyRing<F>& R, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = poly_add(R.field, R.order, a[i], b[i]);
  return r;
}

template <class F>
Vec<F> vec_sub(const PolyRing<F>& R, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = poly_sub(R.field, R.order, a[i], b[i]);
  return r;
}

template <class F>
Vec<F> vec_mul_term(const PolyRing<F>& R, const Vec<F>& a, const Monomial& m,
                    const typename F::Elem& c) {
  Vec<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = poly_mul_term(R.field, a[i], m, c);
  return r;
}

template <class F>
Vec<F> vec_mul_poly(const PolyRing<F>& R, const Vec<F>& a, const Poly<F>& f) {
  Vec<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = poly_mul(R.field, R.order, a[i], f);
  return r;
}

template <class F>
Vec<F> vec_scale(const PolyRing<F>& R, const Vec<F>& a,
                 const typename F::Elem& c) {
  Vec<F> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = poly_scale(R.field, a[i], c);
  return r;
}

template <class F>
bool vec_eq(const PolyRing<F>& R, const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!poly_eq(R.field, a[i], b[i])) return false;
  return true;
}

// Degree of a homogeneous element (component degrees shifted by twists).
// Returns nothing for the zero vector; throws if inhomogeneous.
template <class F>
std::optional<long long> vec_degree(const FreeModule& fm, const Vec<F>& v,
                                    const char* what = "element") {
  std::optional<long long> deg;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    auto h = homogeneity(v[i]);
    if (!h.homogeneous)
      throw UsageError(std::string(what) + ": component not homogeneous");
    long long d = h.degree + fm.twists[i];
    if (deg && *deg != d)
      throw UsageError(std::string(what) + ": mixed degrees " +
                       std::to_string(*deg) + " and " + std::to_string(d));
    deg = d;
  }
  return deg;
}

template <class F>
std::string vec_str(const PolyRing<F>& R, const Vec<F>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << poly_str(R, v[i]);
  }
  os << ")";
  return os.str();
}

// Graded map between free modules, stored row-major: entry (i,j) carries the
// j-th source basis element into the i-th target coordinate and must be
// homogeneous of degree source.twists[j] - target.twists[i] (or zero).
template <class F>
struct ModuleMap {
  FreeModule source, target;
  std::vector<std::vector<Poly<F>>> a;  // a[i][j], target.rank rows

  size_t rows() const { return target.rank(); }
  size_t cols() const { return source.rank(); }
};

template <class F>
ModuleMap<F> make_map(const PolyRing<F>& R, FreeModule source, FreeModule target,
                      std::vector<std::vector<Poly<F>>> entries,
                      const char* what = "module map") {
  ModuleMap<F> m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.a = std::move(entries);
  if (m.a.size() != m.target.rank())
    throw UsageError(std::string(what) + ": row count mismatch");
  for (size_t i = 0; i < m.a.size(); ++i) {
    if (m.a[i].size() != m.source.rank())
      throw UsageError(std::string(what) + ": column count mismatch");
    for (size_t j = 0; j < m.a[i].size(); ++j) {
      const Poly<F>& e = m.a[i][j];
      if (e.is_zero()) continue;
      auto h = homogeneity(e);
      long long want = m.source.twists[j] - m.target.twists[i];
      if (!h.homogeneous || h.degree != want)
        throw UsageError(std::string(what) + ": entry (" + std::to_string(i) +
                         "," + std::to_string(j) +
                         ") not homogeneous of degree " + std::to_string(want));
    }
  }
  (void)R;
  return m;
}

template <class F>
ModuleMap<F> zero_map(const FreeModule& source, const FreeModule& target) {
  ModuleMap<F> m;
  m.source = source;
  m.target = target;
  m.a.assign(target.rank(), std::vector<Poly<F>>(source.rank()));
  return m;
}

template <class F>
Vec<F> map_column(const ModuleMap<F>& m, size_t j) {
  Vec<F> v(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) v[i] = m.a[i][j];
  return v;
}

template <class F>
std::vector<Vec<F>> map_columns(const ModuleMap<F>& m) {
  std::vector<Vec<F>> cols;
  cols.reserve(m.cols());
  for (size_t j = 0; j < m.cols(); ++j) cols.push_back(map_column(m, j));
  return cols;
}

// Build a map from its columns; source twists inferred from column degrees
// unless given. Zero columns default to twist 0 when inferred.
template <class F>
ModuleMap<F> map_from_columns(const PolyRing<F>& R, const FreeModule& target,
                              const std::vector<Vec<F>>& cols,
                              std::optional<std::vector<long long>> source_twists =
                                  std::nullopt,
                              const char* what = "module map") {
  std::vector<long long> tw;
  if (source_twists) {
    tw = *source_twists;
  } else {
    for (const auto& c : cols) {
      auto d = vec_degree(target, c, what);
      tw.push_back(d.value_or(0));
    }
  }
  ModuleMap<F> m;
  m.source = FreeModule(tw);
  m.target = target;
  m.a.assign(target.rank(), std::vector<Poly<F>>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != target.rank())
      throw UsageError(std::string(what) + ": column size mismatch");
    for (size_t i = 0; i < target.rank(); ++i) m.a[i][j] = cols[j][i];
  }
  return make_map(R, m.source, m.target, std::move(m.a), what);
}

template <class F>
Vec<F> apply_map(const PolyRing<F>& R, const ModuleMap<F>& m, const Vec<F>& v) {
  if (v.size() != m.cols()) throw UsageError("apply_map: arity mismatch");
  Vec<F> r(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    Poly<F> acc;
    for (size_t j = 0; j < m.cols(); ++j) {
      if (m.a[i][j].is_zero() || v[j].is_zero()) continue;
      acc = poly_add(R.field, R.order, acc,
                     poly_mul(R.field, R.order, m.a[i][j], v[j]));
    }
    r[i] = std::move(acc);
  }
  return r;
}

// first . second (apply `second`, then `first`).
template <class F>
ModuleMap<F> compose(const PolyRing<F>& R, const ModuleMap<F>& first,
                     const ModuleMap<F>& second) {
  if (!(second.target == first.source))
    throw UsageError("compose: middle module mismatch");
  std::vector<std::vector<Poly<F>>> e(first.rows(),
                                      std::vector<Poly<F>>(second.cols()));
  for (size_t i = 0; i < first.rows(); ++i)
    for (size_t j = 0; j < second.cols(); ++j) {
      Poly<F> acc;
      for (size_t k = 0; k < first.cols(); ++k) {
        if (first.a[i][k].is_zero() || second.a[k][j].is_zero()) continue;
        acc = poly_add(R.field, R.order, acc,
                       poly_mul(R.field, R.order, first.a[i][k], second.a[k][j]));
      }
      e[i][j] = std::move(acc);
    }
  return make_map(R, second.source, first.target, std::move(e), "compose");
}

// Hom(-, R): transposed entries, dualized (negated) twists, arrows reversed.
template <class F>
ModuleMap<F> transpose_map(const PolyRing<F>& R, const ModuleMap<F>& m) {
  std::vector<std::vector<Poly<F>>> e(m.cols(), std::vector<Poly<F>>(m.rows()));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) e[j][i] = m.a[i][j];
  return make_map(R, dual_module(m.target), dual_module(m.source), std::move(e),
                  "transpose");
}

// m (x) id_s with the identity factor innermost: basis (j, b) of the source
// maps through m's entry into (i, b) of the target, twists summed blockwise.
template <class F>
ModuleMap<F> tensor_identity(const PolyRing<F>& R, const ModuleMap<F>& m,
                             const FreeModule& block) {
  size_t s = block.rank();
  FreeModule src, tgt;
  for (long long t : m.source.twists)
    for (long long b : block.twists) src.twists.push_back(t + b);
  for (long long t : m.target.twists)
    for (long long b : block.twists) tgt.twists.push_back(t + b);
  std::vector<std::vector<Poly<F>>> e(tgt.rank(), std::vector<Poly<F>>(src.rank()));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (m.a[i][j].is_zero()) continue;
      for (size_t b = 0; b < s; ++b) e[i * s + b][j * s + b] = m.a[i][j];
    }
  return make_map(R, std::move(src), std::move(tgt), std::move(e),
                  "tensor_identity");
}

// id_s (x) m with the outer identity factor: basis (i, c) of the source maps
// through m's entry into (i, b) of the target. Flattening matches
// tensor_identity, so both act on the same blocked modules.
template <class F>
ModuleMap<F> identity_tensor(const PolyRing<F>& R, const FreeModule& outer,
                             const ModuleMap<F>& m) {
  FreeModule src, tgt;
  for (long long t : outer.twists) {
    for (long long b : m.source.twists) src.twists.push_back(t + b);
  }
  for (long long t : outer.twists)
    for (long long b : m.target.twists) tgt.twists.push_back(t + b);
  std::vector<std::vector<Poly<F>>> e(tgt.rank(), std::vector<Poly<F>>(src.rank()));
  size_t rs = m.cols(), rt = m.rows();
  for (size_t i = 0; i < outer.rank(); ++i)
    for (size_t b = 0; b < rt; ++b)
      for (size_t c = 0; c < rs; ++c)
        e[i * rt + b][i * rs + c] = m.a[b][c];
  return make_map(R, std::move(src), std::move(tgt), std::move(e),
                  "identity_tensor");
}

template <class F>
bool map_entries_equal(const PolyRing<F>& R, const ModuleMap<F>& x,
                       const ModuleMap<F>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j)
      if (!poly_eq(R.field, x.a[i][j], y.a[i][j])) return false;
  return true;
}

template <class F>
bool map_is_zero(const ModuleMap<F>& m) {
  for (const auto& row : m.a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

}  // namespace extscope
