#include <gtest/gtest.h>

#include "degseq/errors.hpp"
#include "degseq/realizability.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace degseq;

namespace {

std::vector<Edge> random_pairs(gen::Rng& rng, const GraphClass& cls, int k) {
  auto all = oracle::pairs_of(cls);
  gen::shuffle(rng, all);
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(k)));
  return all;
}

}  // namespace

TEST(FeasibleExact, Examples) {
  EXPECT_TRUE(feasible_exact(DegreeSequence(GraphClass::bipartite(2, 2), {2, 2}, {2, 2})).feasible);
  EXPECT_FALSE(feasible_exact(DegreeSequence(GraphClass::digraph(2), {2, 2}, {2, 2})).feasible);
  EXPECT_FALSE(feasible_exact(DegreeSequence(GraphClass::bipartite(2, 2), {2, 0}, {2, 0})).feasible);
}

TEST(FeasibleExact, UnbalancedIsInfeasible) {
  auto r = feasible_exact(DegreeSequence(GraphClass::bipartite(2, 2), {2, 1}, {1, 1}));
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.reason.empty());
}

TEST(FeasibleSufficient, Examples) {
  std::vector<int> ones(10, 1);
  EXPECT_EQ(feasible_sufficient(DegreeSequence(GraphClass::bipartite(10, 10), ones, ones)).verdict,
            Sufficiency::guaranteed);
  EXPECT_EQ(feasible_sufficient(DegreeSequence(GraphClass::digraph(10), ones, ones)).verdict,
            Sufficiency::guaranteed);
  EXPECT_EQ(feasible_sufficient(DegreeSequence(GraphClass::bipartite(2, 2), {2, 2}, {2, 2})).verdict,
            Sufficiency::unknown);
  EXPECT_THROW(feasible_sufficient(DegreeSequence(GraphClass::bipartite(2, 2), {2, 0}, {1, 1})),
               PreconditionError);
}

TEST(ForbiddenSet, NormalisesAndMerges) {
  auto cls = GraphClass::bipartite(2, 3);
  ForbiddenSet F(cls, {{4, 1}, {1, 4}, {2, 5}});
  EXPECT_EQ(F.pairs().size(), 2u);
  EXPECT_TRUE(F.contains({1, 4}));
  EXPECT_EQ(F.max_multiplicity(cls), 1);
  EXPECT_EQ(ForbiddenSet(GraphClass::digraph(3), {{1, 5}}).max_multiplicity(GraphClass::digraph(3)), 2);
  EXPECT_THROW(ForbiddenSet(cls, {{1, 2}}), PreconditionError);
}

TEST(FeasibleExact, AgreesWithBruteForce) {
  gen::Rng rng(21);
  for (int it = 0; it < 400; ++it) {
    GraphClass cls = gen::small_class(rng, 4);
    if (cls.ell() * cls.n() > 16) continue;
    auto d = gen::uniform(rng, 0, 1) ? gen::realisable(rng, cls) : gen::any_sequence(rng, cls, 3);
    auto F = random_pairs(rng, cls, gen::uniform(rng, 0, 2));
    bool brute = oracle::brute_count(d, F) > 0;
    EXPECT_EQ(feasible_exact(d, ForbiddenSet(cls, F)).feasible, brute) << d.to_string();
  }
}

TEST(FeasibleSufficient, SoundOnSmallInstances) {
  gen::Rng rng(22);
  int guaranteed = 0;
  for (int it = 0; it < 3000; ++it) {
    GraphClass cls = gen::small_class(rng, 5);
    auto d = gen::any_sequence(rng, cls, 3);
    bool positive = true;
    for (int x : d.degrees()) positive = positive && x >= 1;
    if (!positive) continue;
    auto pairs = random_pairs(rng, cls, gen::uniform(rng, 0, 2));
    ForbiddenSet probe(cls, pairs);
    ForbiddenSet F(cls, pairs, std::max(1, probe.max_multiplicity(cls)));
    if (feasible_sufficient(d, F).verdict == Sufficiency::guaranteed) {
      ++guaranteed;
      EXPECT_TRUE(feasible_exact(d, F).feasible) << d.to_string();
    }
  }
  // No instance this small satisfies either branch; the larger block below does.
  for (int it = 0; it < 200; ++it) {
    int l = gen::uniform(rng, 10, 16), n = gen::uniform(rng, 10, 16);
    GraphClass cls = gen::uniform(rng, 0, 2) ? GraphClass::bipartite(l, n) : GraphClass::digraph(n);
    std::vector<int> s(cls.ell(), 1), t(cls.n(), 1);
    int extra = gen::uniform(rng, 0, 3);
    for (int e = 0; e < extra; ++e) {
      ++s[gen::uniform(rng, 0, cls.ell() - 1)];
      ++t[gen::uniform(rng, 0, cls.n() - 1)];
    }
    long long diff = 0;
    for (int x : s) diff += x;
    for (int x : t) diff -= x;
    for (; diff > 0; --diff) ++t[gen::uniform(rng, 0, cls.n() - 1)];
    for (; diff < 0; ++diff) ++s[gen::uniform(rng, 0, cls.ell() - 1)];
    DegreeSequence d(cls, s, t);
    auto pairs = random_pairs(rng, cls, gen::uniform(rng, 0, 2));
    ForbiddenSet F(cls, pairs, std::max(1, ForbiddenSet(cls, pairs).max_multiplicity(cls)));
    if (feasible_sufficient(d, F).verdict == Sufficiency::guaranteed) {
      ++guaranteed;
      EXPECT_TRUE(feasible_exact(d, F).feasible) << d.to_string();
    }
  }
  EXPECT_GT(guaranteed, 0);
}

TEST(FeasibleExact, MonotoneInForbiddenSet) {
  gen::Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    GraphClass cls = gen::small_class(rng, 5);
    auto d = gen::realisable(rng, cls, 0.4);
    auto pairs = random_pairs(rng, cls, 3);
    std::vector<Edge> grown;
    bool before = feasible_exact(d).feasible;
    for (Edge e : pairs) {
      grown.push_back(e);
      bool now = feasible_exact(d, ForbiddenSet(cls, grown)).feasible;
      EXPECT_FALSE(now && !before);
      before = now;
    }
  }
}
