#include <gtest/gtest.h>

#include <cmath>

#include "degseq/asymptotic.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "gen.hpp"

using namespace degseq;

namespace {

DegreeSequence bip(std::vector<int> s, std::vector<int> t) {
  GraphClass cls = GraphClass::bipartite(static_cast<int>(s.size()), static_cast<int>(t.size()));
  return DegreeSequence(cls, std::move(s), std::move(t));
}

DegreeSequence regular_bip(int n, int k) { return bip(std::vector<int>(n, k), std::vector<int>(n, k)); }

}  // namespace

TEST(LogBinomial, SmallAndLarge) {
  EXPECT_NEAR(log_binomial(4, 2), std::log(6.0), 1e-14);
  EXPECT_EQ(log_binomial(7, 0), 0);
  EXPECT_EQ(log_binomial(7, 7), 0);
  EXPECT_NEAR(log_binomial(1000, 500), std::lgamma(1001.0) - 2 * std::lgamma(501.0), 1e-9);
}

TEST(BinomLogprob, Examples) {
  EXPECT_NEAR(binom_model_logprob(bip({1, 1}, {1, 1})).log_value, std::log(4.0 / 9.0), 1e-14);
  GraphClass di2 = GraphClass::digraph(2);
  EXPECT_NEAR(binom_model_logprob(DegreeSequence(di2, {1, 1}, {1, 1})).log_value, 0, 1e-14);
  EXPECT_NEAR(binom_model_logprob(bip({2}, {1, 1})).log_value, 0, 1e-14);
  EXPECT_THROW(binom_model_logprob(bip({2, 1}, {1, 1})), PreconditionError);
}

TEST(CorrectionH, Examples) {
  EXPECT_NEAR(correction_H(regular_bip(5, 2)), std::exp(-0.5), 1e-14);
  GraphClass di = GraphClass::digraph(5);
  EXPECT_NEAR(correction_H(DegreeSequence(di, {2, 2, 2, 2, 2}, {2, 2, 2, 2, 2})), std::exp(-0.5), 1e-14);
  // sigma^2(s) = s(1 - mu) = 1/4, so the first factor vanishes.
  EXPECT_NEAR(correction_H(bip({1, 1, 0, 0}, {2})), 1.0, 1e-14);
  EXPECT_THROW(correction_H(bip({2, 2}, {2, 2})), SingularityError);
}

TEST(Estimate, TwoByTwoCount) {
  double est = std::exp(estimate_log_count(bip({1, 1}, {1, 1})).log_value);
  EXPECT_NEAR(est, 8.0 / 3.0 * std::exp(-0.5), 1e-12);
  EXPECT_NEAR(est, 1.617, 1e-3);
}

TEST(SparseErrorBound, Examples) {
  std::vector<int> ones(10, 1);
  double want = std::pow(100.0, 0.05) / 10 * 2 + 2 * std::pow(10.0, -0.4);
  EXPECT_NEAR(sparse_error_bound(bip(ones, ones), 0.1), want, 1e-12);
  EXPECT_NEAR(want, 1.048, 1e-3);
  EXPECT_THROW(sparse_error_bound(bip(ones, ones), 0.6), PreconditionError);
  double prev = INFINITY;
  for (int n : {10, 100, 1000, 10000}) {
    std::vector<int> o(n, 1);
    double b = sparse_error_bound(bip(o, o), 0.1);
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(EdgeProbEstimate, ExactOnRegularBipartite) {
  ExactEngine eng;
  auto d = regular_bip(3, 2);
  for (Vertex a = 1; a <= 3; ++a)
    for (Vertex v = 4; v <= 6; ++v) {
      EXPECT_NEAR(edge_prob_estimate(d, a, v), 2.0 / 3.0, 1e-15);
      EXPECT_NEAR(edge_prob_estimate(d, a, v), eng.edge_prob(d, a, v).get_d(), 1e-15);
    }
}

TEST(ClosedForms, RegularValues) {
  auto d = regular_bip(6, 2);
  double mu = 1.0 / 3.0, t = 2;
  EXPECT_NEAR(pi_value(d, 1, 7), mu, 1e-15);
  EXPECT_NEAR(rho_value(d, 1, 2), 1.0, 1e-15);
  EXPECT_NEAR(rho_value(d, 3, 3), 1.0, 1e-15);
  // The general Y* carries a (1 - 1/t) factor from the shifted second pi, and
  // its last factor is 1 + (mu - mu^2) / (t (1 - mu)) when every eps is 0.
  double want = mu * mu * (1 - 1 / t) * (1 + (mu - mu * mu) / (t * (1 - mu)));
  EXPECT_NEAR(ystar_value(d, 1, 7, 2), want, 1e-15);
  EXPECT_THROW(pi_value(d, 1, 2), PreconditionError);
}

TEST(Ratios, Examples) {
  ExactEngine eng;
  auto d = bip({2, 1}, {1, 1});
  EXPECT_EQ(sparse_ratio(d, 1, 1), 1.0);
  EXPECT_NEAR(sparse_ratio(d, 1, 2), 2.0, 1e-15);
  EXPECT_EQ(eng.ratio(d, 1, 2), 2);
  EXPECT_EQ(goal_ratio(d, 2, 2), 1.0);
  EXPECT_TRUE(std::isfinite(goal_ratio(d, 1, 2)));
  GraphClass di = GraphClass::digraph(4);
  DegreeSequence h(di, {3, 2, 2, 2}, {2, 2, 2, 2});
  EXPECT_NEAR(sparse_ratio(h, 2, 3), 1.0, 1e-15);
  EXPECT_NEAR(goal_ratio(h, 2, 3), 1.0, 1e-15);
  EXPECT_THROW(sparse_ratio(regular_bip(3, 1), 1, 2), PreconditionError);
}

TEST(CorrectionH, SymmetricUnderSideSwap) {
  gen::Rng rng(41);
  for (int it = 0; it < 300; ++it) {
    GraphClass cls = GraphClass::bipartite(gen::uniform(rng, 2, 8), gen::uniform(rng, 2, 8));
    auto d = gen::realisable(rng, cls, 0.3);
    if (d.sum_s() == 0 || d.sum_s() == cls.pair_count()) continue;
    EXPECT_NEAR(correction_H(d), correction_H(swap_sides(d)), 1e-12);
  }
}

TEST(Estimate, PermutationInvariant) {
  gen::Rng rng(42);
  for (int it = 0; it < 300; ++it) {
    auto cls = gen::small_class(rng, 7);
    auto d = gen::realisable(rng, cls, 0.4);
    if (d.sum_s() == 0 || d.sum_s() == cls.pair_count()) continue;
    std::vector<int> s(d.s().begin(), d.s().end()), t(d.t().begin(), d.t().end());
    if (!cls.is_digraph()) {
      gen::shuffle(rng, s);
      gen::shuffle(rng, t);
    } else {
      std::vector<int> perm(s.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      gen::shuffle(rng, perm);
      std::vector<int> s2(s.size()), t2(t.size());
      for (std::size_t i = 0; i < perm.size(); ++i) {
        s2[i] = s[perm[i]];
        t2[i] = t[perm[i]];
      }
      s = s2;
      t = t2;
    }
    double a = estimate_log_count(d).log_value;
    double b = estimate_log_count(DegreeSequence(cls, s, t)).log_value;
    EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
  }
}

TEST(GoalRatio, ReciprocalUpToErrorScale) {
  gen::Rng rng(43);
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    int n = gen::uniform(rng, 6, 12);
    GraphClass cls = gen::uniform(rng, 0, 1) ? GraphClass::bipartite(n, n) : GraphClass::digraph(n);
    int k = gen::uniform(rng, 2, n / 3 + 1);
    std::vector<int> s(n, k), t(n, k);
    for (int j = 0; j < 2; ++j) {
      int i = gen::uniform(rng, 0, n - 1), l = gen::uniform(rng, 0, n - 1);
      if (s[i] > 1 && s[l] + 1 < n - 1) {
        --s[i];
        ++s[l];
      }
    }
    s[gen::uniform(rng, 0, n - 1)] += 1;
    DegreeSequence d(cls, s, t);
    Vertex a = gen::uniform(rng, 1, n), b = gen::uniform(rng, 1, n);
    if (d[a] + 1 >= n || d[b] + 1 >= n) continue;
    double prod = goal_ratio(d, a, b) * goal_ratio(d, b, a);
    double scale = goal_ratio_error_scale(d, 0.55) + sparse_ratio_error_scale(d);
    EXPECT_LE(std::abs(prod - 1), 10 * scale) << d.to_string();
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Regime, Flags) {
  auto r = regime(regular_bip(4, 3), AsymParams{0.55, 0.1});
  EXPECT_TRUE(r.mu_at_least_mu0);
  EXPECT_FALSE(r.phi_outside_window);
  EXPECT_TRUE(regime(regular_bip(4, 1), AsymParams{0.7, 0.5}).phi_outside_window);
  EXPECT_FALSE(r.notes().empty());
}
