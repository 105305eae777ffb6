#pragma once

#include <memory>
#include <string>
#include <vector>

#include "degseq/asymptotic.hpp"
#include "degseq/exact.hpp"
#include "degseq/model.hpp"
#include "degseq/operators.hpp"

namespace degseq {

// The closed forms pi, Y*, rho as a float table source, defined on every
// sequence with positive part means. Part statistics are cached per sequence.
class ClosedFormSource {
 public:
  using Scalar = double;
  using Handle = DegreeSequence;

  explicit ClosedFormSource(GraphClass cls);
  ClosedFormSource(ClosedFormSource&&) noexcept;
  ClosedFormSource& operator=(ClosedFormSource&&) noexcept;
  ~ClosedFormSource();

  const GraphClass& graph_class() const { return cls_; }
  int degree(const DegreeSequence& d, Vertex x) const { return d[x]; }
  DegreeSequence minus(const DegreeSequence& d, Vertex x) const { return perturb(d, {x}); }
  bool null(const DegreeSequence&) const { return false; }
  std::string describe(const DegreeSequence& d) const { return d.to_string(); }

  double p(Vertex a, Vertex v, const DegreeSequence& d) const;
  double y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d) const;
  double r(Vertex a, Vertex b, const DegreeSequence& d) const;

 private:
  struct Cache;
  GraphClass cls_;
  std::unique_ptr<Cache> cache_;
};

struct NearFixpointReport {
  double dev_R = 0;  // max |R(P*,Y*)/R* - 1|
  double dev_P = 0;  // max |P(P*,R*)/P* - 1|
  double dev_Y = 0;  // max |Y(P*,Y*)/Y* - 1|
  double mu = 0;
  double eps = 0;    // min(s, t)^(phi - 1)
  double scale_mu_eps4 = 0;
  bool mu_at_least_quarter = false;
  bool deviation_exceeds_eps = false;
  std::size_t evaluations = 0;

  double max_dev() const;
  std::vector<std::string> notes() const;
};

// Applies R, P, Y to the closed forms at d and measures how far each lands
// from its input. Pairs run over the S side; vertices with identical degree
// profiles are represented once (exact for bipartite, where the values only
// depend on degrees). Hypothesis violations are flagged, not thrown.
NearFixpointReport near_fixpoint_report(const DegreeSequence& d, double phi);

// Exact P, Y (and optionally R) tables on the given sequences. Unrealisable
// balanced sequences are marked null; unbalanced ones only receive R entries.
ProbTables<Rational> exact_tables(ExactEngine& eng, const std::vector<DegreeSequence>& seqs,
                                  bool with_r = false);

}  // namespace degseq
