#pragma once

// Test-only brute force. Every 0-1 matrix of a shape is enumerated once and
// bucketed by its margins; queries then scan one bucket with bit masks.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "degseq/model.hpp"
#include "degseq/realizability.hpp"

namespace oracle {

class ShapeTable {
 public:
  // At most 16 cells. Digraph shapes never use the diagonal.
  explicit ShapeTable(const degseq::GraphClass& cls);

  const degseq::GraphClass& graph_class() const { return cls_; }
  // Matrices with margins d avoiding every pair in F and containing every pair in K.
  std::uint64_t count(const degseq::DegreeSequence& d, const std::vector<degseq::Edge>& F = {},
                      const std::vector<degseq::Edge>& K = {}) const;
  std::uint32_t bit(degseq::Edge e) const;

 private:
  degseq::GraphClass cls_;
  std::map<std::vector<int>, std::vector<std::uint32_t>> buckets_;
};

// One-shot count for shapes with at most 16 cells.
std::uint64_t brute_count(const degseq::DegreeSequence& d, const std::vector<degseq::Edge>& F = {},
                          const std::vector<degseq::Edge>& K = {});

// Sequences drawn by iid Bernoulli(p) cells per part, rejected until both
// part sums equal m. Only for tiny shapes.
std::vector<degseq::DegreeSequence> bm_by_rejection(const degseq::GraphClass& cls, int m, double p,
                                                    std::size_t count, std::mt19937_64& rng);

// Every allowable pair (a in S, v in T).
std::vector<degseq::Edge> pairs_of(const degseq::GraphClass& cls);

}  // namespace oracle
