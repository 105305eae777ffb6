#include "degseq/random_models.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/hypergeometric.hpp>
#include <cmath>
#include <numeric>

#include "degseq/errors.hpp"
#include "degseq/event_expr.hpp"

namespace degseq {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::G_bip:
      return "gbip";
    case ModelKind::G_di:
      return "gdi";
    case ModelKind::B_m:
      return "bm";
    case ModelKind::vecB_m:
      return "vbm";
  }
  return "?";
}

ModelKind parse_model(const std::string& name) {
  if (name == "gbip") return ModelKind::G_bip;
  if (name == "gdi") return ModelKind::G_di;
  if (name == "bm") return ModelKind::B_m;
  if (name == "vbm") return ModelKind::vecB_m;
  throw PreconditionError("unknown model '" + name + "' (expected gbip, gdi, bm or vbm)");
}

ModelSpec ModelSpec::make(ModelKind kind, int ell, int n, long long m) {
  ModelSpec s;
  s.kind = kind;
  s.ell = ell;
  s.n = n;
  s.m = m;
  if (s.directed() && ell != n) throw PreconditionError("directed models need ell = n");
  long long N = s.graph_class().pair_count();
  if (m < 0 || m > N)
    throw PreconditionError("m = " + std::to_string(m) + " outside [0, " + std::to_string(N) + "]");
  return s;
}

GraphClass ModelSpec::graph_class() const {
  return directed() ? GraphClass::digraph(n) : GraphClass::bipartite(ell, n);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + stream * 0x9e3779b97f4a7c15ULL);
}

namespace {

// Partial Fisher-Yates over a persistent permutation of 0..N-1. The first m
// slots after each call form a uniform m-subset whatever the starting order.
class SubsetDrawer {
 public:
  explicit SubsetDrawer(long long N) : perm_(static_cast<std::size_t>(N)) {
    std::iota(perm_.begin(), perm_.end(), 0);
  }
  template <class Fn>
  void draw(long long m, std::mt19937_64& rng, Fn&& visit) {
    const long long N = static_cast<long long>(perm_.size());
    for (long long i = 0; i < m; ++i) {
      std::uniform_int_distribution<long long> pick(i, N - 1);
      std::swap(perm_[i], perm_[pick(rng)]);
      visit(perm_[i]);
    }
  }

 private:
  std::vector<long long> perm_;
};

class ModelSampler {
 public:
  explicit ModelSampler(const ModelSpec& spec)
      : spec_(spec), cls_(spec.graph_class()), grid_(cls_.pair_count()), grid2_(cls_.pair_count()) {}

  DegreeSequence draw(std::mt19937_64& rng) {
    const int ell = cls_.ell(), n = cls_.n(), dd = cls_.delta_di();
    std::vector<int> s(ell, 0), t(n, 0);
    switch (spec_.kind) {
      case ModelKind::G_bip:
        grid_.draw(spec_.m, rng, [&](long long c) {
          ++s[c / n];
          ++t[c % n];
        });
        break;
      case ModelKind::G_di:
        grid_.draw(spec_.m, rng, [&](long long c) {
          long long a = c / (n - 1), j = c % (n - 1);
          ++s[a];
          ++t[j < a ? j : j + 1];
        });
        break;
      case ModelKind::B_m:
      case ModelKind::vecB_m:
        grid_.draw(spec_.m, rng, [&](long long c) { ++s[c / (n - dd)]; });
        grid2_.draw(spec_.m, rng, [&](long long c) { ++t[c / (ell - dd)]; });
        break;
    }
    return DegreeSequence(cls_, std::move(s), std::move(t));
  }

 private:
  ModelSpec spec_;
  GraphClass cls_;
  SubsetDrawer grid_, grid2_;
};

}  // namespace

SampleBatch sample(const ModelSpec& model, std::size_t count, std::uint64_t seed) {
  ModelSpec checked = ModelSpec::make(model.kind, model.ell, model.n, model.m);
  SampleBatch batch;
  batch.model = checked;
  batch.seed = seed;
  batch.sequences.reserve(count);
  for (std::size_t start = 0, stream = 0; start < count; start += kStreamChunk, ++stream) {
    std::mt19937_64 rng(stream_seed(seed, stream));
    ModelSampler sampler(checked);
    std::size_t stop = std::min(count, start + kStreamChunk);
    for (std::size_t i = start; i < stop; ++i) batch.sequences.push_back(sampler.draw(rng));
  }
  return batch;
}

Rational bm_probability(const DegreeSequence& d) {
  const GraphClass& cls = d.graph_class();
  const long long m = d.sum_s();
  if (d.sum_t() != m) return 0;
  const unsigned long dd = static_cast<unsigned long>(cls.delta_di());
  auto binom = [](unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return BigCount(0);
    BigCount out;
    mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
    return out;
  };
  BigCount num = 1;
  for (int x : d.s()) num *= binom(static_cast<unsigned long>(cls.n()) - dd, x);
  for (int x : d.t()) num *= binom(static_cast<unsigned long>(cls.ell()) - dd, x);
  BigCount den = binom(static_cast<unsigned long>(cls.pair_count()), static_cast<long>(m));
  den *= den;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace {

struct Accumulator {
  double sum = 0, sum_sq = 0;
  std::size_t k = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++k;
  }
  double mean() const { return k ? sum / static_cast<double>(k) : 0.0; }
  double std_error() const {
    if (k < 2) return 0.0;
    double mu = mean();
    double var = (sum_sq - static_cast<double>(k) * mu * mu) / static_cast<double>(k - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(k));
  }
};

}  // namespace

VarianceReport variance_report(const ModelSpec& model, std::size_t count, std::uint64_t seed) {
  if (count < 1000) throw PreconditionError("variance_report needs count >= 1000");
  SampleBatch batch = sample(model, count, seed);
  const GraphClass cls = batch.model.graph_class();
  Accumulator vs, vt, cst;
  for (const DegreeSequence& d : batch.sequences) {
    FloatStats f = float_stats(d);
    vs.add(f.sigma2_s);
    vt.add(f.sigma2_t);
    if (batch.model.directed()) cst.add(f.sigma_st);
  }
  const double N = static_cast<double>(cls.pair_count());
  const double m = static_cast<double>(batch.model.m);
  const double ell = cls.ell(), n = cls.n();
  const double mu = N > 0 ? m / N : 0.0;
  const double fpc = N > 1 ? (N - m) / (N - 1) : 0.0;

  VarianceReport rep;
  rep.model = batch.model;
  rep.count = count;
  rep.seed = seed;
  // sigma^2 of a part has expectation Var of one degree (the part mean is fixed),
  // which is hypergeometric with success fraction 1/ell (resp. 1/n).
  auto fill = [&](MomentCheck& c, const Accumulator& acc, double mean_deg, double parts) {
    c.mean = acc.mean();
    c.std_error = acc.std_error();
    c.target = mean_deg * (1 - 1 / parts) * fpc;
    c.leading_target = mean_deg * (1 - mu) * (1 - 1 / parts);
  };
  fill(rep.var_s, vs, m / ell, ell);
  fill(rep.var_t, vt, m / n, n);
  if (batch.model.directed()) {
    MomentCheck c;
    c.mean = cst.mean();
    c.std_error = cst.std_error();
    if (batch.model.kind == ModelKind::G_di) {
      // out-row and in-column of one vertex are disjoint cell sets of size n-1
      c.target = N > 1 ? -m * (n - 1) * (n - 1) * (N - m) / (N * N * (N - 1)) : 0.0;
      c.leading_target = -m * (n - 1) * (n - 1) / (N * N);
      rep.printed_cov = -c.target;
    }
    rep.cov_st = c;
  }
  return rep;
}

ChiSquareResult marginal_chi_square(const SampleBatch& batch, Vertex x, double min_expected) {
  const GraphClass cls = batch.model.graph_class();
  if (!cls.valid(x)) throw PreconditionError("marginal_chi_square: vertex out of range");
  const unsigned N = static_cast<unsigned>(cls.pair_count());
  const unsigned m = static_cast<unsigned>(batch.model.m);
  const unsigned K = static_cast<unsigned>(cls.in_S(x) ? cls.n() - cls.delta_di() : cls.ell() - cls.delta_di());
  ChiSquareResult res;
  res.label = (cls.in_S(x) ? "s_" : "t_") + std::to_string(x);
  if (batch.sequences.empty() || m == 0 || K == 0 || m == N) return res;

  boost::math::hypergeometric_distribution<double> hg(K, m, N);
  const unsigned lo = m + K > N ? m + K - N : 0u, hi = std::min(K, m);
  std::vector<double> observed(hi + 1, 0.0), expected(hi + 1, 0.0);
  const double total = static_cast<double>(batch.sequences.size());
  for (const DegreeSequence& d : batch.sequences) observed[static_cast<std::size_t>(d[x])] += 1;
  for (unsigned k = lo; k <= hi; ++k) expected[k] = total * boost::math::pdf(hg, k);

  // pool from both tails towards the mode
  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> cur{0, 0};
  for (unsigned k = lo; k <= hi; ++k) {
    cur.first += observed[k];
    cur.second += expected[k];
    if (cur.second >= min_expected) {
      bins.push_back(cur);
      cur = {0, 0};
    }
  }
  if (cur.second > 0 || cur.first > 0) {
    if (bins.empty())
      bins.push_back(cur);
    else {
      bins.back().first += cur.first;
      bins.back().second += cur.second;
    }
  }
  res.bins = static_cast<int>(bins.size());
  res.df = res.bins - 1;
  for (auto [o, e] : bins) res.statistic += (o - e) * (o - e) / e;
  if (res.df < 1) {
    res.p_value = 1.0;
    return res;
  }
  boost::math::chi_squared_distribution<double> chi(res.df);
  res.p_value = boost::math::cdf(boost::math::complement(chi, res.statistic));
  return res;
}

AqeReport aqe_compare(const ModelSpec& a, const ModelSpec& b, const std::vector<std::string>& events,
                      std::size_t count, std::uint64_t seed, double z) {
  if (a.ell != b.ell || a.n != b.n || a.m != b.m)
    throw PreconditionError("aqe_compare: models must share (ell, n, m)");
  if (a.directed() != b.directed())
    throw PreconditionError("aqe_compare: models must generate the same graph class");
  std::vector<EventExpr> exprs;
  for (const std::string& e : events) exprs.emplace_back(e);
  SampleBatch A = sample(a, count, seed);
  SampleBatch B = sample(b, count, splitmix64(seed ^ 0x5bd1e995ULL));

  AqeReport rep;
  rep.model_a = A.model;
  rep.model_b = B.model;
  rep.count = count;
  rep.seed = seed;
  rep.z = z;
  const double K = static_cast<double>(count);
  for (const EventExpr& e : exprs) {
    EventComparison c;
    c.event = e.text();
    std::size_t ha = 0, hb = 0;
    for (const DegreeSequence& d : A.sequences) ha += e.holds(d);
    for (const DegreeSequence& d : B.sequences) hb += e.holds(d);
    c.p_a = K > 0 ? static_cast<double>(ha) / K : 0.0;
    c.p_b = K > 0 ? static_cast<double>(hb) / K : 0.0;
    if (ha == 0 || hb == 0) {
      c.note = ha == 0 && hb == 0 ? "event never observed; ratio undefined" : "one side never observed; ratio undefined";
    } else {
      double r = c.p_a / c.p_b;
      double se = std::sqrt((1 - c.p_a) / (K * c.p_a) + (1 - c.p_b) / (K * c.p_b));
      c.ratio = r;
      c.ci_low = r * std::exp(-z * se);
      c.ci_high = r * std::exp(z * se);
      c.excludes_one = *c.ci_low > 1.0 || *c.ci_high < 1.0;
    }
    rep.events.push_back(std::move(c));
  }
  return rep;
}

}  // namespace degseq
