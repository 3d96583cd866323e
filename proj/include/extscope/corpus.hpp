#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "invariants.hpp"

namespace extscope {

// Deterministic corpus of monomial quotients over a fixed three-variable
// ring, used by the verification driver for randomized property checks.
// Raw generator output is reduced with explicit modulo (never through a
// distribution object) so every platform sees the same stream.
struct CorpusOptions {
  unsigned long long seed = 20240901;
  size_t size = 100;           // distinct modules to generate
  size_t special_quota = 20;   // grade-2 / length-2 sub-sample to reach
  size_t max_attempts = 20000;
};

template <class F>
struct CorpusEntry {
  std::string name;
  std::vector<Poly<F>> gens;        // minimal monomial generators
  PresentedModule<F> module;
};

template <class F>
struct Corpus {
  PolyRing<F> ring;
  std::vector<CorpusEntry<F>> all;
  std::vector<size_t> special;  // indices with grade 2 and resolution length 2
};

namespace detail {

// One random monomial ideal: 1..4 monomials in 3 variables, exponents 0..3,
// the constant monomial excluded, divisibility-redundant members dropped.
template <class F>
std::vector<Poly<F>> random_monomial_gens(const PolyRing<F>& R,
                                          std::mt19937& rng) {
  const size_t count = 1 + static_cast<size_t>(rng() % 4);
  std::vector<Monomial> monos;
  while (monos.size() < count) {
    std::vector<int> exps(R.nvars());
    int total = 0;
    for (auto& e : exps) {
      e = static_cast<int>(rng() % 4);
      total += e;
    }
    if (total == 0) continue;  // a unit generator would kill the quotient
    monos.push_back(make_monomial(std::move(exps), R.weights));
  }
  std::vector<Monomial> kept;
  for (const auto& m : monos) {
    bool redundant = false;
    for (const auto& o : monos)
      if (!(o == m) && mono_divides(o, m)) redundant = true;
    if (!redundant && std::find(kept.begin(), kept.end(), m) == kept.end())
      kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(),
            [&](const Monomial& a, const Monomial& b) {
              return R.order.greater(a, b);
            });
  std::vector<Poly<F>> gens;
  for (const auto& m : kept) {
    Poly<F> f;
    f.t.push_back({m, R.field.one()});
    gens.push_back(std::move(f));
  }
  return gens;
}

}  // namespace detail

// Grade exactly 2 with a finite resolution of length exactly 2.
template <class F>
bool is_grade2_length2(const CorpusEntry<F>& e, const GBOptions& opts = {}) {
  const PolyRing<F>& R = e.module.ring;
  FreeComplex<F> res =
      free_resolution(R, e.module.pres,
                      static_cast<long long>(R.nvars()) + 1, opts);
  if (!res.complete || complex_ranks(res).size() != 3) return false;
  return grade_of(e.module, opts) == 2;
}

template <class F>
Corpus<F> build_corpus(const PolyRing<F>& R, const CorpusOptions& co = {},
                       const GBOptions& opts = {}) {
  if (R.nvars() != 3 || R.is_quotient())
    throw UsageError("the corpus wants a free ring in three variables");
  Corpus<F> corpus;
  corpus.ring = R;
  std::mt19937 rng(static_cast<std::mt19937::result_type>(co.seed));
  std::set<std::vector<std::vector<int>>> seen;
  size_t attempts = 0;
  auto draw = [&]() -> bool {  // appends one fresh entry; false when exhausted
    while (++attempts <= co.max_attempts) {
      auto gens = detail::random_monomial_gens(R, rng);
      std::vector<std::vector<int>> key;
      for (const auto& g : gens) key.push_back(g.t.front().m.e);
      if (!seen.insert(key).second) continue;  // already in the corpus
      CorpusEntry<F> entry;
      entry.gens = gens;
      entry.module = cyclic_module(R, gens, "corpus");
      std::string s = "(";
      for (size_t i = 0; i < gens.size(); ++i)
        s += (i ? ", " : "") + poly_str(R, gens[i]);
      entry.name = s + ")";
      corpus.all.push_back(std::move(entry));
      return true;
    }
    return false;
  };
  while (corpus.all.size() < co.size && draw()) {
  }
  if (corpus.all.size() < co.size)
    throw ComputationError("corpus generation exhausted its attempt budget");
  for (size_t i = 0; i < corpus.all.size(); ++i)
    if (is_grade2_length2(corpus.all[i], opts)) corpus.special.push_back(i);
  while (corpus.special.size() < co.special_quota) {
    if (!draw())
      throw ComputationError(
          "corpus generation found too few grade-2 length-2 modules");
    if (is_grade2_length2(corpus.all.back(), opts))
      corpus.special.push_back(corpus.all.size() - 1);
  }
  return corpus;
}

}  // namespace extscope
