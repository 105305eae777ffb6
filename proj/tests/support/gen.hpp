#pragma once

// Hand-rolled generators for property tests. Everything is driven by an
// explicit seed so failures reproduce.

#include <random>
#include <vector>

#include "degseq/model.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline degseq::GraphClass small_class(Rng& rng, int max_side = 4) {
  if (uniform(rng, 0, 2) == 0) return degseq::GraphClass::digraph(uniform(rng, 2, max_side));
  return degseq::GraphClass::bipartite(uniform(rng, 1, max_side), uniform(rng, 1, max_side));
}

// Arbitrary entries in [0, max_entry]; usually unbalanced.
inline degseq::DegreeSequence any_sequence(Rng& rng, const degseq::GraphClass& cls, int max_entry) {
  std::vector<int> s(cls.ell()), t(cls.n());
  for (int& x : s) x = uniform(rng, 0, max_entry);
  for (int& x : t) x = uniform(rng, 0, max_entry);
  return degseq::DegreeSequence(cls, s, t);
}

// Margins of a random 0-1 matrix with cell density p, so always realisable.
inline degseq::DegreeSequence realisable(Rng& rng, const degseq::GraphClass& cls, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::vector<int> s(cls.ell(), 0), t(cls.n(), 0);
  for (degseq::Vertex a = 1; a <= cls.ell(); ++a)
    for (degseq::Vertex v = cls.ell() + 1; v <= cls.vertex_count(); ++v)
      if (cls.allowable(a, v) && coin(rng)) {
        ++s[a - 1];
        ++t[v - cls.ell() - 1];
      }
  return degseq::DegreeSequence(cls, s, t);
}

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
  std::shuffle(v.begin(), v.end(), rng);
}

}  // namespace gen
