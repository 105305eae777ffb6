#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "degseq/model.hpp"

namespace degseq {

// G_bip: uniform m-edge bipartite graph. G_di: uniform m-arc loopless digraph.
// B_m / vecB_m: independent binomial degrees per part, conditioned on both
// part sums being m.
enum class ModelKind { G_bip, G_di, B_m, vecB_m };

std::string to_string(ModelKind k);
// Accepts gbip, gdi, bm, vbm.
ModelKind parse_model(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::G_bip;
  int ell = 0;
  int n = 0;
  long long m = 0;

  static ModelSpec make(ModelKind kind, int ell, int n, long long m);
  GraphClass graph_class() const;
  bool directed() const { return kind == ModelKind::G_di || kind == ModelKind::vecB_m; }
};

// Generator metadata: draws come from mt19937_64; stream i of a batch is
// seeded with splitmix64(seed + i * 0x9e3779b97f4a7c15) and serves
// kStreamChunk consecutive draws.
inline constexpr const char* kRngName = "mt19937_64 streams, splitmix64 sub-seeds, 4096 draws per stream";
inline constexpr std::size_t kStreamChunk = 4096;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

struct SampleBatch {
  ModelSpec model;
  std::uint64_t seed = 0;
  std::string rng = kRngName;
  std::vector<DegreeSequence> sequences;
};

SampleBatch sample(const ModelSpec& model, std::size_t count, std::uint64_t seed);

// Pr(d) under B_m / vecB_m: prod_a C(n-delta, s_a) prod_v C(ell-delta, t_v) / C(N, m)^2.
Rational bm_probability(const DegreeSequence& d);

struct MomentCheck {
  double mean = 0;
  double std_error = 0;
  double target = 0;          // exact finite-population value
  double leading_target = 0;  // leading-order form
  double z() const { return std_error > 0 ? (mean - target) / std_error : 0.0; }
  bool within(double k) const { return std::abs(mean - target) <= k * std_error; }
};

struct VarianceReport {
  ModelSpec model;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  MomentCheck var_s;
  MomentCheck var_t;
  std::optional<MomentCheck> cov_st;  // directed models only
  std::optional<double> printed_cov;  // positive closed form as usually displayed (G_di)
};

VarianceReport variance_report(const ModelSpec& model, std::size_t count, std::uint64_t seed);

struct ChiSquareResult {
  std::string label;
  double statistic = 0;
  int df = 0;
  double p_value = 0;
  int bins = 0;
};

// Goodness of fit of the degree of one vertex against its hypergeometric
// law. Bins with expected count < min_expected are pooled into neighbours.
ChiSquareResult marginal_chi_square(const SampleBatch& batch, Vertex x, double min_expected = 5.0);

struct EventComparison {
  std::string event;
  double p_a = 0;
  double p_b = 0;
  std::optional<double> ratio;
  std::optional<double> ci_low, ci_high;
  bool excludes_one = false;
  std::string note;
};

struct AqeReport {
  ModelSpec model_a, model_b;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double z = 3.0;
  std::vector<EventComparison> events;
};

// Empirical event probabilities in two models and their ratio with a
// delta-method interval on log(p_a / p_b).
AqeReport aqe_compare(const ModelSpec& a, const ModelSpec& b, const std::vector<std::string>& events,
                      std::size_t count, std::uint64_t seed, double z = 3.0);

}  // namespace degseq
