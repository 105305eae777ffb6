#include <gtest/gtest.h>

#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace degseq;

namespace {

DegreeSequence bip(std::vector<int> s, std::vector<int> t) {
  GraphClass cls = GraphClass::bipartite(static_cast<int>(s.size()), static_cast<int>(t.size()));
  return DegreeSequence(cls, std::move(s), std::move(t));
}

DegreeSequence di(std::vector<int> s, std::vector<int> t) {
  GraphClass cls = GraphClass::digraph(static_cast<int>(s.size()));
  return DegreeSequence(cls, std::move(s), std::move(t));
}

Rational frac(unsigned long num, unsigned long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Count, Examples) {
  ExactEngine eng;
  EXPECT_EQ(eng.count(bip({1, 1, 1}, {1, 1, 1})), 6);
  EXPECT_EQ(eng.count(bip({2, 2, 2}, {2, 2, 2})), 6);
  EXPECT_EQ(eng.count(bip({2, 2, 2, 2}, {2, 2, 2, 2})), 90);
  EXPECT_EQ(eng.count(di({1, 1, 1, 1}, {1, 1, 1, 1})), 9);
  EXPECT_EQ(eng.count(di({1, 1}, {1, 1})), 1);
}

TEST(Count, UnbalancedAndExhaustedAreZero) {
  ExactEngine eng;
  EXPECT_EQ(eng.count(bip({2, 1}, {1, 1})), 0);
  auto d = bip({1, 1}, {1, 1});
  EXPECT_EQ(eng.count(d, {}, {{1, 3}, {1, 4}}), 0);
}

TEST(Count, ResourceCapIsReported) {
  ExactEngine eng(CountLimits{4, 1u << 30});
  std::vector<int> k(8, 4);
  try {
    eng.count(bip(k, k));
    FAIL() << "expected a cap error";
  } catch (const ResourceCapError& e) {
    EXPECT_EQ(e.cap(), 4u);
  }
}

TEST(EdgeProb, Examples) {
  ExactEngine eng;
  EXPECT_EQ(eng.edge_prob(bip({1, 1}, {1, 1}), 1, 3), Rational(1, 2));
  EXPECT_EQ(eng.edge_prob(bip({2, 2}, {2, 2}), 1, 3), 1);
  auto d = bip({2, 2, 2}, {2, 2, 2});
  for (Vertex a = 1; a <= 3; ++a)
    for (Vertex v = 4; v <= 6; ++v) EXPECT_EQ(eng.edge_prob(d, a, v), Rational(2, 3));
  EXPECT_EQ(eng.path_prob(d, 1, 4, 2), frac(oracle::brute_count(d, {}, {{1, 4}, {2, 4}}), 6));
  EXPECT_THROW(eng.edge_prob(bip({2, 0}, {2, 0}), 1, 3), UndefinedError);
}

TEST(Ratio, Examples) {
  ExactEngine eng;
  EXPECT_EQ(eng.ratio(bip({2, 1}, {1, 1}), 1, 2), 2);
  EXPECT_EQ(eng.ratio(bip({2, 1}, {1, 1}), 1, 1), 1);
  EXPECT_EQ(eng.ratio(bip({2, 2, 1}, {2, 2}), 1, 2), 1);
  EXPECT_THROW(eng.ratio(bip({3, 1}, {2, 1}), 1, 2), UndefinedError);
}

TEST(SwitchingBound, Examples) {
  std::vector<int> ones(10, 1);
  ExactEngine eng;
  auto b = bip(ones, ones);
  ASSERT_TRUE(switching_bound(b).has_value());
  EXPECT_EQ(*switching_bound(b), Rational(1, 2));
  EXPECT_LE(eng.edge_prob(b, 1, 11), *switching_bound(b));
  EXPECT_EQ(eng.edge_prob(b, 1, 11), Rational(1, 10));
  auto d = di(ones, ones);
  EXPECT_EQ(*switching_bound(d), Rational(1, 2));
  EXPECT_LE(eng.edge_prob(d, 1, 12), *switching_bound(d));
  EXPECT_FALSE(switching_bound(bip({1, 1}, {1, 1})).has_value());
}

TEST(Count, MatchesBruteForceWithConstraints) {
  gen::Rng rng(31);
  ExactEngine eng;
  for (int it = 0; it < 1500; ++it) {
    GraphClass cls = gen::small_class(rng, 4);
    if (cls.ell() * cls.n() > 16) continue;
    auto d = gen::uniform(rng, 0, 3) ? gen::realisable(rng, cls) : gen::any_sequence(rng, cls, 4);
    auto all = oracle::pairs_of(cls);
    gen::shuffle(rng, all);
    int nf = gen::uniform(rng, 0, 2), nk = gen::uniform(rng, 0, 2);
    if (nf + nk > static_cast<int>(all.size())) continue;
    std::vector<Edge> F(all.begin(), all.begin() + nf), K(all.begin() + nf, all.begin() + nf + nk);
    EXPECT_EQ(eng.count(d, ForbiddenSet(cls, F), K), oracle::brute_count(d, F, K)) << d.to_string();
  }
}

TEST(Count, ForcedEdgeIdentity) {
  gen::Rng rng(32);
  ExactEngine eng;
  for (int it = 0; it < 300; ++it) {
    GraphClass cls = gen::small_class(rng, 5);
    auto d = gen::realisable(rng, cls);
    for (Edge e : oracle::pairs_of(cls)) {
      if (d[e.a] == 0 || d[e.v] == 0) continue;
      auto d1 = perturb(d, {e.a, e.v});
      EXPECT_EQ(eng.count(d, {}, {e}), eng.count(d1) - eng.count(d1, {}, {e}));
    }
  }
}

TEST(EdgeProb, HandshakeSumsToDegree) {
  gen::Rng rng(33);
  ExactEngine eng;
  for (int it = 0; it < 200; ++it) {
    GraphClass cls = gen::small_class(rng, 5);
    auto d = gen::realisable(rng, cls);
    if (eng.count(d) == 0) continue;
    for (Vertex a = 1; a <= cls.vertex_count(); ++a) {
      Rational sum = 0;
      for (Vertex v : cls.neighbours(a)) sum += eng.edge_prob(d, a, v);
      EXPECT_EQ(sum, d[a]);
    }
  }
}

TEST(Count, CachedEngineAgrees) {
  gen::Rng rng(34);
  ExactEngine plain, cached(CountLimits{}, true);
  for (int it = 0; it < 200; ++it) {
    GraphClass cls = gen::small_class(rng, 6);
    auto d = gen::realisable(rng, cls);
    EXPECT_EQ(plain.count(d), cached.count(d));
    EXPECT_EQ(plain.count(d), cached.count(d));
  }
}
