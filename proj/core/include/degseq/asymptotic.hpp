#pragma once

#include <string>
#include <vector>

#include "degseq/model.hpp"

namespace degseq {

// Natural-log scale value; always a positive quantity here.
struct LogValue {
  double log_value = 0;
  double value() const;
};

struct AsymParams {
  double phi = 0.55;  // error-exponent parameter, nominal window (1/2, 3/5)
  double mu0 = 0.1;   // small-density threshold
};

// Inputs that fall outside the regime the error terms are stated for. The
// formulas are still evaluated.
struct RegimeFlags {
  bool mu_at_least_mu0 = false;
  bool phi_outside_window = false;
  bool deviation_exceeds_eps = false;
  std::vector<std::string> notes() const;
  bool any() const { return mu_at_least_mu0 || phi_outside_window || deviation_exceeds_eps; }
};

// max(s^(phi-1), t^(phi-1)).
double eps_of(const DegreeSequence& d, double phi);
RegimeFlags regime(const DegreeSequence& d, const AsymParams& params);

// ln C(n, k) via log-gamma, with a direct sum when k or n-k is small.
double log_binomial(long long n, long long k);

LogValue binom_model_logprob(const DegreeSequence& d);
double correction_H(const DegreeSequence& d);
LogValue estimate_logprob(const DegreeSequence& d);
LogValue estimate_log_count(const DegreeSequence& d);

// Error scales with implicit constant 1.
double dense_error_scale(const DegreeSequence& d, double phi);
double sparse_error_bound(const DegreeSequence& d, double eps_param);

double edge_prob_estimate(const DegreeSequence& d, Vertex a, Vertex v);
double edge_prob_error_scale(const DegreeSequence& d, double phi);

// Parameterised forms. A FormulaFrame carries the part-level scalars of one
// sequence, oriented so that "S" is the part holding the first vertex.
struct FormulaFrame {
  double mu = 0;
  double s = 0, t = 0;      // means of the oriented S and T parts
  double ell = 0, n = 0;    // sizes of the oriented S and T parts
  double sigma2_S = 0, sigma2_T = 0;
  int delta = 0;
};

FormulaFrame frame_of(const FloatStats& f, bool swapped);

// pi(eps_a, eps_v, eps_{a'}, eps_{v'})
double pi_expr(const FormulaFrame& F, double ea, double ev, double ea_mate, double ev_mate);
// rho(eps_a, eps_b, eps_{a'}, eps_{b'})
double rho_expr(const FormulaFrame& F, double ea, double eb, double ea_mate, double eb_mate);
double ystar_expr(const FormulaFrame& F, double ea, double ev, double eb, double ea_mate,
                  double ev_mate, double eb_mate);

double pi_value(const DegreeSequence& d, Vertex a, Vertex v);
double rho_value(const DegreeSequence& d, Vertex a, Vertex b);
double ystar_value(const DegreeSequence& d, Vertex a, Vertex v, Vertex b);

double sparse_ratio(const DegreeSequence& d, Vertex a, Vertex b);
double sparse_ratio_error_scale(const DegreeSequence& d);

double goal_ratio(const DegreeSequence& d, Vertex a, Vertex b);
// mu * eps^4, the closeness scale for P*, R* against the exact values.
double goal_ratio_error_scale(const DegreeSequence& d, double phi);

}  // namespace degseq
