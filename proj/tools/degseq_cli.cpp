// degseq: exact counts, estimates, operator iteration and sampling for
// bipartite graphs and loopless digraphs with given degrees.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "degseq/asymptotic.hpp"
#include "degseq/closed_form.hpp"
#include "degseq/exact.hpp"
#include "degseq/iteration.hpp"
#include "degseq/random_models.hpp"
#include "degseq/realizability.hpp"
#include "harness/io.hpp"
#include "harness/suites.hpp"

using namespace degseq;
using harness::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t max_memo = CountLimits{}.max_memo;
  std::size_t max_terms = CountLimits{}.max_terms;
  std::string format = "json";
  bool anchor = false;

  CountLimits limits() const { return CountLimits{max_memo, max_terms}; }
};

const std::map<std::string, std::string> kFormulas = {
    {"count", "number of 0-1 matrices with the given margins, avoiding forbidden cells and containing forced ones"},
    {"edgeprob-exact", "P_av(d) = N_av(d) / N(d)"},
    {"ratio-exact", "R_ab(d) = N(d - e_a) / N(d - e_b)"},
    {"feasible", "max-flow on the cell network; sufficient test: 9m <= ell n with max degrees at most 2m/ell and 2m/n, "
                 "or max degrees at most sqrt(m)/2 - C"},
    {"estimate", "Pr(d) ~ Pr_B(d) * H, with Pr_B the conditioned-binomial probability and H the exponential "
                 "correction in the part variances; count = Pr(d) * C(N, m)"},
    {"edgeprob", "P_av ~ s_a t_v / m * (1 - correction terms in the degree deviations and part variances)"},
    {"ratio", "goal: degree ratio with second-order correction; sparse: (s_a/s_b)(1 + (s_a - s_b) M2 / M1^2); "
              "rho: parameterised ratio form"},
    {"iterate", "C(p, y) = (p', Y(p', y)) with p' = P(p, R(p, y))"},
    {"near-fixpoint", "max relative deviations of R, P, Y applied to the closed forms against themselves, "
                      "with scale mu * eps^4"},
    {"sample", "uniform m-subsets of the pair grid (graph models) or of each part's cell grid (binomial models)"},
    {"compare", "ratio of event probabilities in two models with a delta-method interval on the log ratio"},
    {"verify", "runs a named verification suite"},
};

void emit(const Globals& g, const std::string& cmd, json out) {
  if (g.anchor) out["formula"] = kFormulas.at(cmd);
  std::cout << (g.format == "csv" ? harness::to_csv(out) : harness::dump(out));
}

DegreeSequence load_seq(const std::string& path) { return harness::parse_sequence(harness::load_json_file(path), path); }

ForbiddenSet load_forbidden(const std::string& path, const GraphClass& cls, int C) {
  if (path.empty()) return ForbiddenSet(cls, {}, C);
  return ForbiddenSet(cls, harness::parse_pairs(harness::load_json_file(path), cls, path), C);
}

json flags_json(const RegimeFlags& f) {
  return json{{"mu_at_least_mu0", f.mu_at_least_mu0},
              {"phi_outside_window", f.phi_outside_window},
              {"deviation_exceeds_eps", f.deviation_exceeds_eps},
              {"notes", f.notes()}};
}

json iteration_json(const IterationReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"iteration", s.iteration},
                     {"max_rel_change", s.max_rel_change},
                     {"contraction", s.contraction},
                     {"valid_sequences", s.valid_sequences}});
  return json{{"backend", r.backend},       {"converged", r.converged},   {"iterations", r.iterations},
              {"stop_reason", r.stop_reason}, {"domain_size", r.domain_size}, {"realisable", r.realisable},
              {"center_valid", r.center_valid}, {"dropped_singular", r.dropped_singular}, {"steps", steps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic tools for degree sequences of bipartite graphs and loopless digraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--max-memo", g.max_memo, "Cap on memoised DP states per count");
  app.add_option("--max-ie-terms", g.max_terms, "Cap on DP transitions per count");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--paper-anchor", g.anchor, "Include the formula being evaluated in the output");

  std::string input, forbid, force, mode = "exact", what = "logprob", formula = "goal", model, models, out_path,
                                    suite, out_dir;
  int a = 0, v = 0, b = 0, C = 1, radius = -1, max_iter = 100, ell = 0, n = 0;
  long long m = 0;
  std::size_t count = 1000;
  double phi = 0.55, mu0 = 0.1, tol = 1e-10;
  bool exact = false;
  std::string init = "constant";
  std::vector<std::string> events;

  auto add_input = [&](CLI::App* sc) { sc->add_option("--input", input, "Degree sequence JSON")->required(); };

  auto* c_count = app.add_subcommand("count", "Exact number of realisations");
  add_input(c_count);
  c_count->add_option("--forbid", forbid, "JSON list of forbidden pairs");
  c_count->add_option("--force", force, "JSON list of forced pairs");

  auto* c_pe = app.add_subcommand("edgeprob-exact", "Exact edge probability");
  add_input(c_pe);
  c_pe->add_option("--a", a)->required();
  c_pe->add_option("--v", v)->required();

  auto* c_re = app.add_subcommand("ratio-exact", "Exact ratio N(d-e_a)/N(d-e_b)");
  add_input(c_re);
  c_re->add_option("--a", a)->required();
  c_re->add_option("--b", b)->required();

  auto* c_feas = app.add_subcommand("feasible", "Realisability");
  add_input(c_feas);
  c_feas->add_option("--forbid", forbid, "JSON list of forbidden pairs");
  c_feas->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sufficient"}));
  c_feas->add_option("--C", C, "Allowed forbidden multiplicity per vertex (sufficient mode)");

  auto* c_est = app.add_subcommand("estimate", "Asymptotic probability or count estimate");
  add_input(c_est);
  c_est->add_option("--what", what)->check(CLI::IsMember({"logprob", "logcount", "Htilde"}));
  c_est->add_option("--phi", phi);
  c_est->add_option("--mu0", mu0);

  auto* c_ep = app.add_subcommand("edgeprob", "Edge probability estimate");
  add_input(c_ep);
  c_ep->add_option("--a", a)->required();
  c_ep->add_option("--v", v)->required();
  c_ep->add_option("--phi", phi);

  auto* c_ra = app.add_subcommand("ratio", "Degree ratio estimate");
  add_input(c_ra);
  c_ra->add_option("--a", a)->required();
  c_ra->add_option("--b", b)->required();
  c_ra->add_option("--formula", formula)->check(CLI::IsMember({"goal", "sparse", "rho"}));
  c_ra->add_option("--phi", phi);

  auto* c_it = app.add_subcommand("iterate", "Fixed-point iteration of the recursion operators");
  add_input(c_it);
  c_it->add_option("--radius", radius, "Downward L1 radius (default: 2m, the full domain)");
  c_it->add_option("--tol", tol);
  c_it->add_option("--max-iter", max_iter);
  c_it->add_option("--init", init)->check(CLI::IsMember({"constant", "product", "exact"}));
  c_it->add_flag("--exact", exact, "Exact rational arithmetic");

  auto* c_nf = app.add_subcommand("near-fixpoint", "Closed forms under one operator application");
  add_input(c_nf);
  c_nf->add_option("--phi", phi);

  auto* c_sa = app.add_subcommand("sample", "Draw degree sequences from a random model");
  c_sa->add_option("--model", model)->required()->check(CLI::IsMember({"gbip", "gdi", "bm", "vbm"}));
  c_sa->add_option("--ell", ell);
  c_sa->add_option("--n", n)->required();
  c_sa->add_option("--m", m)->required();
  c_sa->add_option("--count", count);
  c_sa->add_option("--out", out_path, "JSON lines output (default stdout)");

  auto* c_cmp = app.add_subcommand("compare", "Event probabilities in two models");
  c_cmp->add_option("--models", models, "Two comma-separated models, e.g. gbip,bm")->required();
  c_cmp->add_option("--event", events, "Event expression (repeatable)")->required();
  c_cmp->add_option("--ell", ell);
  c_cmp->add_option("--n", n)->required();
  c_cmp->add_option("--m", m)->required();
  c_cmp->add_option("--count", count);

  auto* c_ver = app.add_subcommand("verify", "Run a verification suite");
  c_ver->add_option("--suite", suite)->required()->check(CLI::IsMember(harness::suite_names()));
  c_ver->add_option("--out-dir", out_dir, "Directory for report.json and report.csv");
  c_ver->add_option("--count", count, "Draws per sampling check")->default_val(100000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_count->parsed()) {
      DegreeSequence d = load_seq(input);
      ForbiddenSet F = load_forbidden(forbid, d.graph_class(), 1);
      std::vector<Edge> K;
      if (!force.empty()) K = harness::parse_pairs(harness::load_json_file(force), d.graph_class(), force);
      ExactEngine eng(g.limits());
      emit(g, "count", json{{"count", eng.count(d, F, K).get_str()}});
    } else if (c_pe->parsed()) {
      DegreeSequence d = load_seq(input);
      emit(g, "edgeprob-exact", harness::rational_json(ExactEngine(g.limits()).edge_prob(d, a, v)));
    } else if (c_re->parsed()) {
      DegreeSequence d = load_seq(input);
      emit(g, "ratio-exact", harness::rational_json(ExactEngine(g.limits()).ratio(d, a, b)));
    } else if (c_feas->parsed()) {
      DegreeSequence d = load_seq(input);
      ForbiddenSet F = load_forbidden(forbid, d.graph_class(), C);
      if (mode == "exact") {
        FeasibilityResult r = feasible_exact(d, F);
        emit(g, "feasible", json{{"feasible", r.feasible}, {"reason", r.reason}});
      } else {
        SufficientResult r = feasible_sufficient(d, F);
        emit(g, "feasible", json{{"feasible", to_string(r.verdict)}, {"reason", r.reason}});
      }
    } else if (c_est->parsed()) {
      DegreeSequence d = load_seq(input);
      AsymParams p{phi, mu0};
      json out{{"regime", flags_json(regime(d, p))}, {"error_scale", dense_error_scale(d, phi)}};
      if (what == "Htilde") {
        double h = correction_H(d);
        out["value"] = h;
        out["log_value"] = std::log(h);
      } else {
        LogValue lv = what == "logprob" ? estimate_logprob(d) : estimate_log_count(d);
        out["value"] = lv.value();
        out["log_value"] = lv.log_value;
      }
      emit(g, "estimate", out);
    } else if (c_ep->parsed()) {
      DegreeSequence d = load_seq(input);
      double val = edge_prob_estimate(d, a, v);
      emit(g, "edgeprob",
           json{{"value", val}, {"log_value", std::log(val)}, {"error_scale", edge_prob_error_scale(d, phi)}});
    } else if (c_ra->parsed()) {
      DegreeSequence d = load_seq(input);
      double val = 0, scale = 0;
      if (formula == "goal") {
        val = goal_ratio(d, a, b);
        scale = goal_ratio_error_scale(d, phi);
      } else if (formula == "sparse") {
        val = sparse_ratio(d, a, b);
        scale = sparse_ratio_error_scale(d);
      } else {
        val = rho_value(d, a, b);
        scale = goal_ratio_error_scale(d, phi);
      }
      emit(g, "ratio", json{{"value", val}, {"log_value", std::log(val)}, {"error_scale", scale}});
    } else if (c_it->parsed()) {
      DegreeSequence d = load_seq(input);
      if (balance_state(d) != Balance::balanced) throw harness::InputError("iterate: the centre must be balanced");
      int R = radius < 0 ? 2 * static_cast<int>(d.sum_s()) : radius;
      auto dom = downward_domain(d, R);
      IterationOptions o;
      o.tol = tol;
      o.max_iter = max_iter;
      const GraphClass& cls = d.graph_class();
      json out;
      auto centre_p = [&](const auto& tab) {
        json rows = json::array();
        for (Vertex x = 1; x <= cls.ell(); ++x)
          for (Vertex y = cls.ell() + 1; y <= cls.vertex_count(); ++y)
            if (cls.allowable(x, y) && tab.has_p(x, y, d))
              rows.push_back({{"a", x}, {"v", y}, {"p", ScalarTraits<typename std::decay_t<decltype(tab)>::Scalar>::to_double(tab.p(x, y, d))}});
        return rows;
      };
      auto finish = [&](const auto& res) {
        out = iteration_json(res.second);
        out["center_p"] = centre_p(res.first);
      };
      if (exact) {
        ExactEngine eng(g.limits(), true);
        Rational mu = stats(d).mu;
        if (init == "exact")
          finish(iterate_fixpoint<Rational>(exact_tables(eng, dom), dom, o));
        else if (init == "constant")
          finish(iterate_fixpoint<Rational>(ConstantTables<Rational>(cls, mu, mu * mu), dom, o));
        else
          throw harness::InputError("iterate: --init product is float only");
      } else {
        double mu = to_double(stats(d).mu);
        if (init == "product")
          finish(iterate_fixpoint<double>(ProductFormSource(cls), dom, o));
        else if (init == "constant")
          finish(iterate_fixpoint<double>(ConstantTables<double>(cls, mu, mu * mu), dom, o));
        else
          throw harness::InputError("iterate: --init exact needs --exact");
      }
      out["radius"] = R;
      emit(g, "iterate", out);
      return out["converged"].get<bool>() ? 0 : 1;
    } else if (c_nf->parsed()) {
      DegreeSequence d = load_seq(input);
      NearFixpointReport r = near_fixpoint_report(d, phi);
      emit(g, "near-fixpoint",
           json{{"dev_R", r.dev_R}, {"dev_P", r.dev_P}, {"dev_Y", r.dev_Y}, {"scale_mu_eps4", r.scale_mu_eps4},
                {"mu", r.mu}, {"eps", r.eps}, {"notes", r.notes()}});
    } else if (c_sa->parsed()) {
      ModelKind k = parse_model(model);
      ModelSpec spec = ModelSpec::make(k, ell == 0 ? n : ell, n, m);
      SampleBatch batch = sample(spec, count, g.seed);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw harness::InputError("cannot write " + out_path);
      }
      std::ostream& os = out_path.empty() ? std::cout : file;
      for (const DegreeSequence& d : batch.sequences) os << harness::sequence_to_json(d).dump() << "\n";
      if (!out_path.empty())
        emit(g, "sample", json{{"model", to_string(k)}, {"count", count}, {"seed", g.seed}, {"rng", batch.rng},
                               {"out", out_path}});
    } else if (c_cmp->parsed()) {
      auto comma = models.find(',');
      if (comma == std::string::npos) throw harness::InputError("--models expects two comma-separated names");
      ModelKind ka = parse_model(models.substr(0, comma)), kb = parse_model(models.substr(comma + 1));
      int L = ell == 0 ? n : ell;
      AqeReport r = aqe_compare(ModelSpec::make(ka, L, n, m), ModelSpec::make(kb, L, n, m), events, count, g.seed);
      json rows = json::array();
      for (const auto& e : r.events)
        rows.push_back({{"event", e.event},
                        {"p_a", e.p_a},
                        {"p_b", e.p_b},
                        {"ratio", e.ratio ? json(*e.ratio) : json()},
                        {"ci_low", e.ci_low ? json(*e.ci_low) : json()},
                        {"ci_high", e.ci_high ? json(*e.ci_high) : json()},
                        {"excludes_one", e.excludes_one},
                        {"note", e.note}});
      emit(g, "compare", json{{"model_a", to_string(ka)}, {"model_b", to_string(kb)}, {"count", count},
                              {"seed", g.seed}, {"z", r.z}, {"events", rows}});
    } else if (c_ver->parsed()) {
      harness::SuiteConfig cfg;
      cfg.seed = g.seed;
      cfg.limits = g.limits();
      cfg.samples = count;
      harness::VerificationReport rep = harness::run_suite(suite, cfg);
      json out = rep.to_json();
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "report.json") << harness::dump(out);
        std::ofstream(std::filesystem::path(out_dir) / "report.csv") << harness::to_csv(out);
      }
      emit(g, "verify", out);
      return rep.exit_code();
    }
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const harness::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
