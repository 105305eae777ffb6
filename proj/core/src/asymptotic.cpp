#include "degseq/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

constexpr double kGuard = 1e-12;

void require_positive(double x, const char* what) {
  if (!(std::abs(x) >= kGuard)) throw SingularityError(std::string("singular denominator: ") + what);
}

void require_balanced(const DegreeSequence& d) {
  if (d.sum_s() != d.sum_t())
    throw PreconditionError("sequence must be balanced: sum(s)=" + std::to_string(d.sum_s()) +
                            ", sum(t)=" + std::to_string(d.sum_t()));
}

double eps_in_part(const DegreeSequence& d, const FloatStats& f, Vertex x) {
  const GraphClass& cls = d.graph_class();
  double mean = cls.in_S(x) ? f.s_bar : f.t_bar;
  return (d[x] - mean) / mean;
}

double mate_eps(const DegreeSequence& d, const FloatStats& f, Vertex x) {
  const GraphClass& cls = d.graph_class();
  if (!cls.is_digraph()) return 0.0;
  return eps_in_part(d, f, cls.mate(x));
}

}  // namespace

double LogValue::value() const { return std::exp(log_value); }

std::vector<std::string> RegimeFlags::notes() const {
  std::vector<std::string> out;
  if (mu_at_least_mu0) out.push_back("density mu >= mu0");
  if (phi_outside_window) out.push_back("phi outside (1/2, 3/5)");
  if (deviation_exceeds_eps) out.push_back("degree deviation exceeds eps");
  return out;
}

double eps_of(const DegreeSequence& d, double phi) {
  FloatStats f = float_stats(d);
  require_positive(f.s_bar, "mean of s");
  require_positive(f.t_bar, "mean of t");
  return std::max(std::pow(f.s_bar, phi - 1), std::pow(f.t_bar, phi - 1));
}

RegimeFlags regime(const DegreeSequence& d, const AsymParams& params) {
  RegimeFlags r;
  FloatStats f = float_stats(d);
  r.mu_at_least_mu0 = f.mu >= params.mu0;
  r.phi_outside_window = !(params.phi > 0.5 && params.phi < 0.6);
  if (f.s_bar > 0 && f.t_bar > 0) {
    double eps = eps_of(d, params.phi);
    for (Vertex x = 1; x <= d.graph_class().vertex_count(); ++x)
      if (std::abs(eps_in_part(d, f, x)) > eps) r.deviation_exceeds_eps = true;
  }
  return r;
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) throw PreconditionError("log_binomial: k outside [0, n]");
  long long j = std::min(k, n - k);
  if (j <= 30) {
    long double acc = 0;
    for (long long i = 1; i <= j; ++i)
      acc += std::log1p(static_cast<long double>(n - j) / static_cast<long double>(i));
    return static_cast<double>(acc);
  }
  long double r = std::lgamma(static_cast<long double>(n) + 1) -
                  std::lgamma(static_cast<long double>(k) + 1) -
                  std::lgamma(static_cast<long double>(n - k) + 1);
  return static_cast<double>(r);
}

LogValue binom_model_logprob(const DegreeSequence& d) {
  require_balanced(d);
  const GraphClass& cls = d.graph_class();
  if (!d.entrywise_feasible()) throw PreconditionError("degree exceeds the part size");
  long long m = d.sum_s();
  long double acc = -2.0L * log_binomial(cls.pair_count(), m);
  for (int x : d.s()) acc += log_binomial(cls.n() - cls.delta_di(), x);
  for (int x : d.t()) acc += log_binomial(cls.ell() - cls.delta_di(), x);
  return {static_cast<double>(acc)};
}

double correction_H(const DegreeSequence& d) {
  FloatStats f = float_stats(d);
  require_positive(f.s_bar, "mean of s");
  require_positive(f.t_bar, "mean of t");
  require_positive(1 - f.mu, "1 - mu");
  double one = 1 - f.mu;
  double e = -0.5 * (1 - f.sigma2_s / (f.s_bar * one)) * (1 - f.sigma2_t / (f.t_bar * one)) -
             f.delta_di * f.sigma_st / (f.s_bar * one);
  return std::exp(e);
}

LogValue estimate_logprob(const DegreeSequence& d) {
  return {binom_model_logprob(d).log_value + std::log(correction_H(d))};
}

LogValue estimate_log_count(const DegreeSequence& d) {
  return {estimate_logprob(d).log_value + log_binomial(d.graph_class().pair_count(), d.sum_s())};
}

double dense_error_scale(const DegreeSequence& d, double phi) {
  FloatStats f = float_stats(d);
  require_positive(std::min(f.s_bar, f.t_bar), "min mean");
  double l = f.ell, n = f.n, m = f.M1s;
  auto lg = [](double x) { return std::log(x) * std::log(x) / std::sqrt(x); };
  return lg(l) + lg(n) + std::pow(std::min(f.s_bar, f.t_bar), 5 * phi - 5) * m * m / (l * n);
}

double sparse_error_bound(const DegreeSequence& d, double eps_param) {
  if (!(eps_param > 0 && eps_param < 0.5))
    throw PreconditionError("sparse_error_bound needs 0 < eps < 1/2");
  FloatStats f = float_stats(d);
  if (f.M1s < 1) throw PreconditionError("sparse_error_bound needs m >= 1");
  double l = f.ell, n = f.n, m = f.M1s;
  double dS = f.delta_S, dT = f.delta_T;
  return std::pow(dS, 3) * std::pow(dT, 3) * std::pow(n * l, eps_param / 2) / m *
             (1 / f.s_bar + 1 / f.t_bar) +
         std::pow(n, eps_param - 0.5) + std::pow(l, eps_param - 0.5);
}

double edge_prob_estimate(const DegreeSequence& d, Vertex a, Vertex v) {
  const GraphClass& cls = d.graph_class();
  if (!cls.allowable(a, v)) throw PreconditionError("edge_prob_estimate: pair not allowable");
  if (cls.in_T(a)) std::swap(a, v);
  FloatStats f = float_stats(d);
  const double s = f.s_bar, t = f.t_bar, m = f.M1s, dl = f.delta_di;
  const double sa = d[a], tv = d[v];
  double den0 = m - dl * t;
  double den1 = m - dl * t - t * s;
  double den2 = t * s * (f.ell - t);
  double den3 = t * s * (f.n - s);
  require_positive(den0, "m - delta*t");
  require_positive(den1, "m - delta*t - t*s");
  require_positive(den2, "t*s*(ell - t)");
  require_positive(den3, "t*s*(n - s)");
  double corr = 1 - (sa - s) * (tv - t) / den1 + (sa - s) * f.sigma2_t / den2 +
                (tv - t) * f.sigma2_s / den3;
  if (cls.is_digraph()) corr += (d[cls.mate(a)] + d[cls.mate(v)]) / (f.n - 1);
  return sa * tv / den0 * corr;
}

double edge_prob_error_scale(const DegreeSequence& d, double phi) {
  FloatStats f = float_stats(d);
  require_positive(std::min(f.s_bar, f.t_bar), "min mean");
  return std::pow(std::min(f.s_bar, f.t_bar), 4 * phi - 4) * f.M1s / (f.n * f.ell);
}

FormulaFrame frame_of(const FloatStats& f, bool swapped) {
  FormulaFrame F;
  F.mu = f.mu;
  F.delta = f.delta_di;
  if (!swapped) {
    F.s = f.s_bar;
    F.t = f.t_bar;
    F.ell = f.ell;
    F.n = f.n;
    F.sigma2_S = f.sigma2_s;
    F.sigma2_T = f.sigma2_t;
  } else {
    F.s = f.t_bar;
    F.t = f.s_bar;
    F.ell = f.n;
    F.n = f.ell;
    F.sigma2_S = f.sigma2_t;
    F.sigma2_T = f.sigma2_s;
  }
  return F;
}

namespace {

void check_frame(const FormulaFrame& F) {
  require_positive(F.s, "mean of S part");
  require_positive(F.t, "mean of T part");
  require_positive(1 - F.mu, "1 - mu");
}

}  // namespace

double pi_expr(const FormulaFrame& F, double ea, double ev, double ea_mate, double ev_mate) {
  const double mu = F.mu;
  double inner = (mu * ea * ev - ea * F.sigma2_T / (F.t * F.ell) - ev * F.sigma2_S / (F.s * F.n)) /
                 (1 - mu);
  return mu * (1 + ea) * (1 + ev) * (1 - inner + F.delta * (ea_mate + ev_mate) * mu / F.s);
}

double rho_expr(const FormulaFrame& F, double ea, double eb, double ea_mate, double eb_mate) {
  const double mu = F.mu;
  double num = 1 - mu * (1 + eb) + mu / F.s;
  double den = 1 - mu * (1 + ea) + mu / F.s;
  require_positive(den, "1 - mu(1+eps_a) + mu/s");
  require_positive(1 + eb, "1 + eps_b");
  double tail = 1 + (ea - eb) / (1 - mu) * (F.sigma2_T / ((1 - mu) * F.t * F.ell) - 1 / F.ell) +
                F.delta * (ea_mate - eb_mate) * mu / (F.s * (1 - mu));
  return (1 + ea) / (1 + eb) * num / den * tail;
}

double ystar_expr(const FormulaFrame& F, double ea, double ev, double eb, double ea_mate,
                  double ev_mate, double eb_mate) {
  const double mu = F.mu;
  double first = pi_expr(F, ea, ev, ea_mate, ev_mate);
  double second = pi_expr(F, eb, ev - 1 / F.t, eb_mate, ev_mate);
  double third = 1 + (mu * (1 + ea) - mu * mu * (1 + ea + eb)) / (F.t * (1 - mu));
  return first * second * third;
}

double pi_value(const DegreeSequence& d, Vertex a, Vertex v) {
  const GraphClass& cls = d.graph_class();
  if (!cls.allowable(a, v)) throw PreconditionError("pi_value: pair not allowable");
  FloatStats f = float_stats(d);
  FormulaFrame F = frame_of(f, cls.in_T(a));
  check_frame(F);
  return pi_expr(F, eps_in_part(d, f, a), eps_in_part(d, f, v), mate_eps(d, f, a),
                 mate_eps(d, f, v));
}

double rho_value(const DegreeSequence& d, Vertex a, Vertex b) {
  const GraphClass& cls = d.graph_class();
  if (!cls.valid(a) || !cls.valid(b) || !cls.same_part(a, b))
    throw PreconditionError("rho_value: a and b must be in the same part");
  FloatStats f = float_stats(d);
  FormulaFrame F = frame_of(f, cls.in_T(a));
  check_frame(F);
  return rho_expr(F, eps_in_part(d, f, a), eps_in_part(d, f, b), mate_eps(d, f, a),
                  mate_eps(d, f, b));
}

double ystar_value(const DegreeSequence& d, Vertex a, Vertex v, Vertex b) {
  const GraphClass& cls = d.graph_class();
  if (a == b || !cls.allowable(a, v) || !cls.allowable(b, v))
    throw PreconditionError("ystar_value: (a,v,b) must be an allowable 2-path");
  FloatStats f = float_stats(d);
  FormulaFrame F = frame_of(f, cls.in_T(a));
  check_frame(F);
  return ystar_expr(F, eps_in_part(d, f, a), eps_in_part(d, f, v), eps_in_part(d, f, b),
                    mate_eps(d, f, a), mate_eps(d, f, v), mate_eps(d, f, b));
}

double sparse_ratio(const DegreeSequence& d, Vertex a, Vertex b) {
  const GraphClass& cls = d.graph_class();
  if (!cls.in_S(a) || !cls.in_S(b)) throw PreconditionError("sparse_ratio: a, b must lie in S");
  if (balance_state(d) != Balance::S_heavy) throw PreconditionError("sparse_ratio: d must be S-heavy");
  if (a == b) return 1.0;
  if (d[b] < 1) throw SingularityError("sparse_ratio: s_b = 0");
  double M1 = static_cast<double>(d.sum_t());
  if (M1 < 1) throw PreconditionError("sparse_ratio: needs M1 >= 1");
  double M2 = 0;
  for (int x : d.t()) M2 += static_cast<double>(x) * (x - 1);
  double sa = d[a], sb = d[b];
  double dmate = cls.is_digraph() ? d[cls.mate(a)] - d[cls.mate(b)] : 0.0;
  return sa / sb * (1 + ((sa - sb) * M2 + dmate * cls.delta_di() * M1) / (M1 * M1));
}

double sparse_ratio_error_scale(const DegreeSequence& d) {
  FloatStats f = float_stats(d);
  require_positive(f.t_bar, "mean of t");
  double m = f.M1t;
  require_positive(m, "m");
  return std::pow(f.delta_S, 3) * std::pow(f.delta_T, 3) / (f.t_bar * m * m);
}

double goal_ratio(const DegreeSequence& d, Vertex a, Vertex b) {
  const GraphClass& cls = d.graph_class();
  if (!cls.in_S(a) || !cls.in_S(b)) throw PreconditionError("goal_ratio: a, b must lie in S");
  if (balance_state(d) != Balance::S_heavy) throw PreconditionError("goal_ratio: d must be S-heavy");
  if (a == b) return 1.0;
  if (d[b] < 1) throw SingularityError("goal_ratio: s_b = 0");
  const double n = cls.n(), ell = cls.ell();
  const double dbi = 1 - cls.delta_di();
  const double sa = d[a], sb = d[b];
  require_positive(n + dbi - sa, "n + delta_bi - s_a");
  require_positive(n + dbi - sb, "n + delta_bi - s_b");
  // Statistics of d - e_a.
  const double M1s = static_cast<double>(d.sum_s()) - 1, M1t = static_cast<double>(d.sum_t());
  const double s = M1s / ell, t = M1t / n;
  const double mu1 = (M1s + M1t) / (2.0 * static_cast<double>(cls.pair_count()));
  require_positive(s, "mean of s");
  require_positive(t, "mean of t");
  require_positive(1 - mu1, "1 - mu'");
  double var_t = 0;
  for (int x : d.t()) var_t += (x - t) * (x - t);
  var_t /= n;
  double e = (sb - sa) / (s * ell * (1 - mu1)) * (1 - var_t / (t * (1 - mu1)));
  if (cls.is_digraph()) e += (d[cls.mate(a)] - d[cls.mate(b)]) / (s * n * (1 - mu1));
  return sa * (n + dbi - sb) / (sb * (n + dbi - sa)) * std::exp(e);
}

double goal_ratio_error_scale(const DegreeSequence& d, double phi) {
  FloatStats f = float_stats(d);
  double dbar = std::min(f.s_bar, f.t_bar);
  require_positive(dbar, "min mean");
  return f.mu * std::pow(std::pow(dbar, phi - 1), 4);
}

}  // namespace degseq
