#include <gtest/gtest.h>

#include <algorithm>

#include "degseq/errors.hpp"
#include "degseq/model.hpp"
#include "gen.hpp"

using namespace degseq;

TEST(GraphClass, PairCountsAndMates) {
  EXPECT_EQ(GraphClass::bipartite(3, 5).pair_count(), 15);
  EXPECT_EQ(GraphClass::digraph(5).pair_count(), 20);
  for (auto cls : {GraphClass::bipartite(3, 3), GraphClass::digraph(3)})
    for (Vertex a = 1; a <= 3; ++a) EXPECT_EQ(cls.allowable(a, cls.mate(a)), !cls.is_digraph());
  auto di = GraphClass::digraph(4);
  EXPECT_EQ(di.mate(2), 6);
  EXPECT_EQ(di.mate(6), 2);
  EXPECT_THROW(GraphClass::digraph(1), PreconditionError);
  EXPECT_THROW(GraphClass::bipartite(0, 2), PreconditionError);
}

TEST(GraphClass, AllowableIsSymmetricAndCrossPart) {
  auto cls = GraphClass::digraph(4);
  for (Vertex x = 1; x <= 8; ++x)
    for (Vertex y = 1; y <= 8; ++y) {
      EXPECT_EQ(cls.allowable(x, y), cls.allowable(y, x));
      if (cls.same_part(x, y)) EXPECT_FALSE(cls.allowable(x, y));
    }
  EXPECT_EQ(cls.neighbours(1).size(), 3u);
}

TEST(DegreeSequence, RejectsBadInput) {
  auto cls = GraphClass::bipartite(2, 2);
  EXPECT_THROW(DegreeSequence(cls, {1}, {1, 1}), PreconditionError);
  EXPECT_THROW(DegreeSequence(cls, {1, -1}, {1, 1}), PreconditionError);
  DegreeSequence over(cls, {3, 0}, {1, 1});
  EXPECT_FALSE(over.entrywise_feasible());
}

TEST(Stats, Examples) {
  auto st = stats(DegreeSequence(GraphClass::bipartite(3, 3), {2, 2, 2}, {2, 2, 2}));
  EXPECT_EQ(st.s_bar, 2);
  EXPECT_EQ(st.mu, Rational(2, 3));
  EXPECT_EQ(st.sigma2_s, 0);
  EXPECT_EQ(st.sigma2_t, 0);

  auto di = stats(DegreeSequence(GraphClass::digraph(3), {1, 1, 1}, {1, 1, 1}));
  EXPECT_EQ(di.mu, Rational(1, 2));
  ASSERT_TRUE(di.sigma_st.has_value());
  EXPECT_EQ(*di.sigma_st, 0);

  auto b = stats(DegreeSequence(GraphClass::bipartite(2, 4), {3, 1}, {1, 1, 1, 1}));
  EXPECT_EQ(b.s_bar, 2);
  EXPECT_EQ(b.sigma2_s, 1);
  EXPECT_EQ(b.t_bar, 1);
  EXPECT_EQ(b.sigma2_t, 0);
  EXPECT_EQ(b.mu, Rational(1, 2));
}

TEST(Balance, Examples) {
  auto cls = GraphClass::bipartite(2, 2);
  EXPECT_EQ(balance_state(DegreeSequence(cls, {1, 1}, {1, 1})), Balance::balanced);
  EXPECT_EQ(balance_state(DegreeSequence(cls, {2, 1}, {1, 1})), Balance::S_heavy);
  EXPECT_EQ(balance_state(DegreeSequence(cls, {1, 1}, {3, 1})), Balance::other);
}

TEST(Perturb, Examples) {
  auto cls = GraphClass::bipartite(2, 2);
  DegreeSequence d(cls, {2, 2}, {2, 2});
  EXPECT_EQ(perturb(d, {1}), DegreeSequence(cls, {1, 2}, {2, 2}));
  EXPECT_EQ(perturb(d, {1, 3}), DegreeSequence(cls, {1, 2}, {1, 2}));
  DegreeSequence z(cls, {0, 1}, {1, 0});
  try {
    perturb(z, {1});
    FAIL() << "expected underflow";
  } catch (const UnderflowError& e) {
    EXPECT_EQ(e.vertex(), 1);
  }
  EXPECT_FALSE(try_perturb(z, {1}).has_value());
}

TEST(Stats, DecrementLowersM1sByOne) {
  gen::Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    auto cls = gen::small_class(rng, 6);
    auto d = gen::any_sequence(rng, cls, 4);
    for (Vertex a = 1; a <= cls.ell(); ++a)
      if (d[a] > 0) EXPECT_EQ(stats(perturb(d, {a})).M1s, stats(d).M1s - 1);
  }
}

TEST(Stats, PermutationInvariance) {
  gen::Rng rng(12);
  for (int it = 0; it < 200; ++it) {
    auto cls = GraphClass::bipartite(gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 6));
    auto d = gen::any_sequence(rng, cls, 5);
    std::vector<int> s(d.s().begin(), d.s().end()), t(d.t().begin(), d.t().end());
    gen::shuffle(rng, s);
    gen::shuffle(rng, t);
    auto a = stats(d), b = stats(DegreeSequence(cls, s, t));
    EXPECT_EQ(a.s_bar, b.s_bar);
    EXPECT_EQ(a.t_bar, b.t_bar);
    EXPECT_EQ(a.sigma2_s, b.sigma2_s);
    EXPECT_EQ(a.sigma2_t, b.sigma2_t);
    EXPECT_EQ(a.mu, b.mu);
    EXPECT_EQ(a.delta_S, b.delta_S);
    EXPECT_EQ(a.delta_T, b.delta_T);
  }
}

TEST(SwapSides, IsAnInvolution) {
  gen::Rng rng(13);
  for (int it = 0; it < 200; ++it) {
    auto cls = gen::small_class(rng, 6);
    auto d = gen::any_sequence(rng, cls, 4);
    EXPECT_EQ(swap_sides(swap_sides(d)), d);
    auto w = swap_sides(d);
    for (Vertex x = 1; x <= cls.vertex_count(); ++x) EXPECT_EQ(w[cls.swap_vertex(x)], d[x]);
  }
}

TEST(FloatStats, MatchesExactStats) {
  gen::Rng rng(14);
  for (int it = 0; it < 100; ++it) {
    auto cls = gen::small_class(rng, 6);
    auto d = gen::realisable(rng, cls);
    auto e = stats(d);
    auto f = float_stats(d);
    EXPECT_NEAR(f.mu, to_double(e.mu), 1e-12);
    EXPECT_NEAR(f.sigma2_s, to_double(e.sigma2_s), 1e-12);
    EXPECT_NEAR(f.sigma2_t, to_double(e.sigma2_t), 1e-12);
    if (e.sigma_st) EXPECT_NEAR(f.sigma_st, to_double(*e.sigma_st), 1e-12);
  }
}
