#include "degseq/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace degseq {

struct ClosedFormSource::Cache {
  struct Entry {
    FloatStats f;
    FormulaFrame fs, ft;  // oriented from S and from T
  };
  std::unordered_map<DegreeSequence, Entry, DegreeSequenceHash> stats;

  const Entry& get(const DegreeSequence& d) {
    auto it = stats.find(d);
    if (it != stats.end()) return it->second;
    Entry e;
    e.f = float_stats(d);
    e.fs = frame_of(e.f, false);
    e.ft = frame_of(e.f, true);
    for (const FormulaFrame* F : {&e.fs, &e.ft}) {
      if (!(F->s > 0) || !(F->t > 0)) throw SingularityError("closed forms need positive part means at " + d.to_string());
      if (!(1 - F->mu > 0)) throw SingularityError("closed forms need mu < 1 at " + d.to_string());
    }
    return stats.emplace(d, e).first->second;
  }
};

namespace {

double eps_of_vertex(const DegreeSequence& d, const FloatStats& f, Vertex x) {
  double mean = d.graph_class().in_S(x) ? f.s_bar : f.t_bar;
  return (d[x] - mean) / mean;
}

double mate_eps_of(const DegreeSequence& d, const FloatStats& f, Vertex x) {
  const GraphClass& cls = d.graph_class();
  return cls.is_digraph() ? eps_of_vertex(d, f, cls.mate(x)) : 0.0;
}

}  // namespace

ClosedFormSource::ClosedFormSource(GraphClass cls) : cls_(cls), cache_(std::make_unique<Cache>()) {}
ClosedFormSource::ClosedFormSource(ClosedFormSource&&) noexcept = default;
ClosedFormSource& ClosedFormSource::operator=(ClosedFormSource&&) noexcept = default;
ClosedFormSource::~ClosedFormSource() = default;

double ClosedFormSource::p(Vertex a, Vertex v, const DegreeSequence& d) const {
  const auto& e = cache_->get(d);
  const FormulaFrame& F = cls_.in_T(a) ? e.ft : e.fs;
  return pi_expr(F, eps_of_vertex(d, e.f, a), eps_of_vertex(d, e.f, v), mate_eps_of(d, e.f, a),
                 mate_eps_of(d, e.f, v));
}

double ClosedFormSource::y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d) const {
  const auto& e = cache_->get(d);
  const FormulaFrame& F = cls_.in_T(a) ? e.ft : e.fs;
  return ystar_expr(F, eps_of_vertex(d, e.f, a), eps_of_vertex(d, e.f, v), eps_of_vertex(d, e.f, b),
                    mate_eps_of(d, e.f, a), mate_eps_of(d, e.f, v), mate_eps_of(d, e.f, b));
}

double ClosedFormSource::r(Vertex a, Vertex b, const DegreeSequence& d) const {
  if (a == b) return 1.0;
  const auto& e = cache_->get(d);
  const FormulaFrame& F = cls_.in_T(a) ? e.ft : e.fs;
  return rho_expr(F, eps_of_vertex(d, e.f, a), eps_of_vertex(d, e.f, b), mate_eps_of(d, e.f, a),
                  mate_eps_of(d, e.f, b));
}

double NearFixpointReport::max_dev() const { return std::max({dev_R, dev_P, dev_Y}); }

std::vector<std::string> NearFixpointReport::notes() const {
  std::vector<std::string> out;
  if (mu_at_least_quarter) out.push_back("density mu >= 1/4");
  if (deviation_exceeds_eps) out.push_back("some degree deviates from its part mean by more than eps");
  return out;
}

namespace {

// Up to three vertices per degree class of each part. In a digraph every
// vertex is kept since the mate structure breaks the symmetry.
std::vector<Vertex> representatives(const DegreeSequence& d) {
  const GraphClass& cls = d.graph_class();
  std::vector<Vertex> out;
  if (cls.is_digraph()) {
    for (Vertex x = 1; x <= cls.vertex_count(); ++x) out.push_back(x);
    return out;
  }
  std::map<std::pair<int, int>, int> seen;
  for (Vertex x = 1; x <= cls.vertex_count(); ++x) {
    int& c = seen[{cls.in_S(x) ? 0 : 1, d[x]}];
    if (c < 3) {
      ++c;
      out.push_back(x);
    }
  }
  return out;
}

double rel_dev(double got, double want) {
  if (want == 0) return got == 0 ? 0.0 : INFINITY;
  return std::abs(got / want - 1);
}

}  // namespace

NearFixpointReport near_fixpoint_report(const DegreeSequence& d, double phi) {
  const GraphClass& cls = d.graph_class();
  NearFixpointReport rep;
  FloatStats f = float_stats(d);
  rep.mu = f.mu;
  double base = std::min(f.s_bar, f.t_bar);
  if (!(base > 0)) throw PreconditionError("near_fixpoint_report: part means must be positive");
  rep.eps = std::pow(base, phi - 1);
  rep.scale_mu_eps4 = rep.mu * std::pow(rep.eps, 4);
  rep.mu_at_least_quarter = rep.mu >= 0.25;
  for (Vertex x = 1; x <= cls.vertex_count(); ++x)
    if (std::abs(eps_of_vertex(d, f, x)) > rep.eps) rep.deviation_exceeds_eps = true;

  ClosedFormSource src(cls);
  std::vector<Vertex> reps = representatives(d);
  std::vector<Vertex> S;
  for (Vertex x : reps)
    if (cls.in_S(x)) S.push_back(x);

  // R on same-part S pairs
  for (Vertex a : S)
    for (Vertex b : S) {
      if (a == b || d[b] == 0) continue;
      rep.dev_R = std::max(rep.dev_R, rel_dev(apply_R(src, d, a, b), src.r(a, b, d)));
      ++rep.evaluations;
    }

  // P with r taken from the closed form rho
  for (Vertex a : S)
    for (Vertex v : reps) {
      if (!cls.allowable(a, v) || d[a] == 0 || d[v] == 0) continue;
      rep.dev_P = std::max(rep.dev_P, rel_dev(apply_P(src, src, d, a, v), src.p(a, v, d)));
      ++rep.evaluations;
    }

  for (Vertex a : S)
    for (Vertex v : reps) {
      if (!cls.allowable(a, v) || d[a] == 0 || d[v] < 2) continue;
      for (Vertex b : S) {
        if (b == a || !cls.allowable(b, v) || d[b] == 0) continue;
        rep.dev_Y = std::max(rep.dev_Y, rel_dev(apply_Y(src, src, d, a, v, b), src.y(a, v, b, d)));
        ++rep.evaluations;
      }
    }
  return rep;
}

ProbTables<Rational> exact_tables(ExactEngine& eng, const std::vector<DegreeSequence>& seqs, bool with_r) {
  if (seqs.empty()) throw PreconditionError("exact_tables: no sequences");
  const GraphClass cls = seqs.front().graph_class();
  ProbTables<Rational> out(cls);
  const int N = cls.vertex_count();
  for (const DegreeSequence& d : seqs) {
    const bool balanced = d.sum_s() == d.sum_t();
    if (!balanced) {
      // heavy sequences carry only ratios
      if (!with_r) continue;
      for (Vertex a = 1; a <= N; ++a)
        for (Vertex b = 1; b <= N; ++b)
          if (a != b && cls.same_part(a, b) && d[b] > 0) {
            try {
              out.set_r(a, b, d, eng.ratio(d, a, b));
            } catch (const UndefinedError&) {
            }
          }
      continue;
    }
    if (sgn(eng.count(d)) == 0) {
      out.mark_null(d);
      continue;
    }
    for (Vertex a = 1; a <= N; ++a)
      for (Vertex v = 1; v <= N; ++v) {
        if (!cls.allowable(a, v)) continue;
        out.set_p(a, v, d, eng.edge_prob(d, a, v));
        for (Vertex b = 1; b <= N; ++b)
          if (b != a && cls.allowable(b, v)) out.set_y(a, v, b, d, eng.path_prob(d, a, v, b));
      }
    if (with_r)
      for (Vertex a = 1; a <= N; ++a)
        for (Vertex b = 1; b <= N; ++b)
          if (a != b && cls.same_part(a, b) && d[b] > 0) {
            try {
              out.set_r(a, b, d, eng.ratio(d, a, b));
            } catch (const UndefinedError&) {
            }
          }
  }
  return out;
}

}  // namespace degseq
