#pragma once

#include <string>
#include <vector>

#include "degseq/model.hpp"

namespace degseq {

// An allowable pair stored with a in S and v in T.
struct Edge {
  Vertex a = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Normalises orientation; throws PreconditionError if the pair is not allowable.
Edge make_edge(const GraphClass& cls, Vertex x, Vertex y);

class ForbiddenSet {
 public:
  ForbiddenSet() = default;
  // Pairs may be given in either orientation; duplicates are merged.
  ForbiddenSet(const GraphClass& cls, const std::vector<Edge>& pairs, int C = 1);

  const std::vector<Edge>& pairs() const { return pairs_; }
  int C() const { return C_; }
  bool empty() const { return pairs_.empty(); }
  bool contains(Edge e) const;
  // Largest number of excluded pairs at any vertex, counting the digraph
  // diagonal as one exclusion per vertex.
  int max_multiplicity(const GraphClass& cls) const;

 private:
  std::vector<Edge> pairs_;
  int C_ = 1;
};

struct FeasibilityResult {
  bool feasible = false;
  std::string reason;
};

// Max-flow test on the cell network.
FeasibilityResult feasible_exact(const DegreeSequence& d, const ForbiddenSet& F = {});

enum class Sufficiency { guaranteed, unknown };
const char* to_string(Sufficiency s);

struct SufficientResult {
  Sufficiency verdict = Sufficiency::unknown;
  std::string reason;
};

// Applies the two sufficient-condition branches verbatim. Requires every
// degree >= 1 and the exclusion multiplicity <= F.C().
SufficientResult feasible_sufficient(const DegreeSequence& d, const ForbiddenSet& F = {});

}  // namespace degseq
