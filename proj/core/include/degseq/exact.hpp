#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "degseq/model.hpp"
#include "degseq/realizability.hpp"

namespace degseq {

struct CountLimits {
  // Memoised DP states across all columns of one count() call.
  std::size_t max_memo = 10'000'000;
  // Column-choice transitions enumerated by one count() call.
  std::size_t max_terms = std::size_t{1} << 30;
};

class ExactEngine {
 public:
  explicit ExactEngine(CountLimits limits = {}, bool cache_results = false);
  ~ExactEngine();
  ExactEngine(ExactEngine&&) noexcept;
  ExactEngine& operator=(ExactEngine&&) noexcept;

  // Number of graphs realising d over A minus `forbidden` that contain every
  // forced pair. Returns 0 for unbalanced input or when forced pairs exhaust a
  // degree; throws ResourceCapError past the limits.
  BigCount count(const DegreeSequence& d, const ForbiddenSet& forbidden = {},
                 const std::vector<Edge>& forced = {}) const;

  // N_av(d) / N(d).
  ExactProb edge_prob(const DegreeSequence& d, Vertex a, Vertex v) const;
  // N_{av,bv}(d) / N(d).
  ExactProb path_prob(const DegreeSequence& d, Vertex a, Vertex v, Vertex b) const;
  // N(d - e_a) / N(d - e_b).
  ExactProb ratio(const DegreeSequence& d, Vertex a, Vertex b) const;

  const CountLimits& limits() const { return limits_; }

 private:
  struct Cache;
  CountLimits limits_;
  std::unique_ptr<Cache> cache_;
};

// Delta_S Delta_T / (M1(s) (1 - 2(Delta_S+1)(Delta_T+1)/M1(s))), or nullopt
// when the denominator is not positive.
std::optional<Rational> switching_bound(const DegreeSequence& d);

}  // namespace degseq
