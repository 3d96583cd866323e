#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "util.hpp"

namespace extscope {

// Exact rationals backed by GMP. mpq_class keeps values canonicalized.
struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw UsageError("zero denominator");
    Elem q(num, den);
    q.canonicalize();
    return q;
  }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw UsageError("division by zero");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  bool same(const RationalField&) const { return true; }
};

// Prime field F_p for p < 2^31; residues in [0, p).
struct PrimeField {
  using Elem = std::uint32_t;
  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (p < 2 || p >= (1u << 31)) throw UsageError("characteristic out of range");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw UsageError("characteristic must be prime: " + std::to_string(p));
  }

  Elem zero() const { return 0; }
  Elem one() const { return p > 1 ? 1 : 0; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    mpz_class n = num % p, d = den % p;
    if (n < 0) n += p;
    if (d < 0) d += p;
    return div(static_cast<Elem>(n.get_ui()), static_cast<Elem>(d.get_ui()));
  }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= p ? static_cast<Elem>(s - p) : static_cast<Elem>(s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((std::uint64_t(a) * b) % p);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw UsageError("division by zero");
    // Fermat: a^(p-2) mod p.
    std::uint64_t base = a, acc = 1, e = p - 2;
    while (e) {
      if (e & 1) acc = (acc * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return static_cast<Elem>(acc);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p); }
  bool same(const PrimeField& o) const { return p == o.p; }
};

}  // namespace extscope
