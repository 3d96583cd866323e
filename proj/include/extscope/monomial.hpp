#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "util.hpp"

namespace extscope {

// Exponent vector with cached weighted degree. The degree is fixed at
// construction from the ring's weights and kept additive thereafter.
struct Monomial {
  std::vector<int> e;
  long long deg = 0;

  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

inline Monomial make_monomial(std::vector<int> exps,
                              const std::vector<long long>& weights) {
  if (exps.size() != weights.size()) throw UsageError("exponent arity mismatch");
  Monomial m;
  m.e = std::move(exps);
  for (size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] < 0) throw UsageError("negative exponent");
    m.deg += static_cast<long long>(m.e[i]) * weights[i];
  }
  return m;
}

inline Monomial mono_one(size_t nvars) {
  Monomial m;
  m.e.assign(nvars, 0);
  return m;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  r.deg = a.deg + b.deg;
  return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  // a | b
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

// b / a, caller guarantees divisibility.
inline Monomial mono_quot(const Monomial& b, const Monomial& a) {
  Monomial r = b;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= a.e[i];
  r.deg = b.deg - a.deg;
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b,
                         const std::vector<long long>& weights) {
  Monomial r;
  r.e.resize(a.e.size());
  for (size_t i = 0; i < r.e.size(); ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += static_cast<long long>(r.e[i]) * weights[i];
  }
  return r;
}

inline Monomial mono_gcd(const Monomial& a, const Monomial& b,
                         const std::vector<long long>& weights) {
  Monomial r;
  r.e.resize(a.e.size());
  for (size_t i = 0; i < r.e.size(); ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.deg += static_cast<long long>(r.e[i]) * weights[i];
  }
  return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

// Total orders on monomials. degrevlex and deglex refine the weighted degree;
// an elimination block order compares (block exponent sum, then degrevlex).
struct MonomialOrder {
  enum class Kind { degrevlex, deglex, elim_block } kind = Kind::degrevlex;
  int block = 0;  // leading variables eliminated by elim_block

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder deglex() { return {Kind::deglex, 0}; }
  static MonomialOrder elim(int k) { return {Kind::elim_block, k}; }

  // +1 if a > b, -1 if a < b, 0 if equal.
  int cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::elim_block: {
        long long ba = 0, bb = 0;
        for (int i = 0; i < block; ++i) {
          ba += a.e[i];
          bb += b.e[i];
        }
        if (ba != bb) return ba > bb ? 1 : -1;
        return cmp_degrevlex(a, b);
      }
      case Kind::deglex: {
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        for (size_t i = 0; i < a.e.size(); ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      }
      case Kind::degrevlex:
      default:
        return cmp_degrevlex(a, b);
    }
  }

  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

  std::string str() const {
    switch (kind) {
      case Kind::deglex: return "deglex";
      case Kind::elim_block: return "elim(" + std::to_string(block) + ")";
      default: return "degrevlex";
    }
  }

 private:
  static int cmp_degrevlex(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (size_t i = a.e.size(); i-- > 0;) {
      int d = a.e[i] - b.e[i];
      if (d != 0) return d < 0 ? 1 : -1;
    }
    return 0;
  }
};

}  // namespace extscope
