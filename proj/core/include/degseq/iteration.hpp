#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degseq/model.hpp"
#include "degseq/neighborhood.hpp"
#include "degseq/operators.hpp"

namespace degseq {

// Balanced sequences with integer handles, plus the one-step-decremented
// (heavy) sequences the operators pass through.
class IndexedDomain {
 public:
  IndexedDomain(GraphClass cls, std::vector<DegreeSequence> balanced, std::vector<char> null_flags);

  const GraphClass& graph_class() const { return cls_; }
  int balanced_count() const { return balanced_count_; }
  int size() const { return static_cast<int>(seqs_.size()); }
  const DegreeSequence& seq(int id) const { return seqs_[static_cast<std::size_t>(id)]; }
  int degree(int id, Vertex x) const { return seqs_[static_cast<std::size_t>(id)][x]; }
  // Handle of seq(id) - e_x, or -1 outside the domain.
  int minus(int id, Vertex x) const { return minus_[static_cast<std::size_t>(id) * stride_ + x]; }
  bool null(int id) const { return id < balanced_count_ && null_[static_cast<std::size_t>(id)]; }
  int find(const DegreeSequence& d) const;

  // Ordered allowable pairs and 2-paths, with dense index lookups.
  const std::vector<std::pair<Vertex, Vertex>>& pairs() const { return pairs_; }
  const std::vector<std::array<Vertex, 3>>& triples() const { return triples_; }
  int pair_index(Vertex a, Vertex v) const { return pair_idx_[static_cast<std::size_t>(a) * stride_ + v]; }
  int triple_index(Vertex a, Vertex v, Vertex b) const {
    return triple_idx_[(static_cast<std::size_t>(a) * stride_ + v) * stride_ + b];
  }

  // Balanced handles d - e_x - e_w over allowable (x,w) with positive degrees;
  // `missing` reports whether any of them lies outside the domain.
  std::vector<int> dependencies(int id, bool& missing) const;

 private:
  GraphClass cls_;
  int balanced_count_ = 0;
  std::size_t stride_ = 0;
  std::vector<DegreeSequence> seqs_;
  std::vector<char> null_;
  std::vector<int> minus_;
  std::unordered_map<DegreeSequence, int, DegreeSequenceHash> index_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::vector<std::array<Vertex, 3>> triples_;
  std::vector<int> pair_idx_;
  std::vector<int> triple_idx_;
};

template <class ScalarT>
struct IndexedView {
  using Scalar = ScalarT;
  using Handle = int;

  const IndexedDomain* dom;
  const std::vector<Scalar>* P;
  const std::vector<Scalar>* Y;

  const GraphClass& graph_class() const { return dom->graph_class(); }
  int degree(int h, Vertex x) const { return dom->degree(h, x); }
  int minus(int h, Vertex x) const {
    int out = dom->minus(h, x);
    if (out < 0)
      throw DomainError("lookup left the domain: " + dom->seq(h).to_string() + " - e_" + std::to_string(x));
    return out;
  }
  bool null(int h) const { return dom->null(h); }
  std::string describe(int h) const { return dom->seq(h).to_string(); }
  Scalar p(Vertex a, Vertex v, int h) const {
    check_balanced(h);
    return (*P)[static_cast<std::size_t>(h) * dom->pairs().size() + dom->pair_index(a, v)];
  }
  Scalar y(Vertex a, Vertex v, Vertex b, int h) const {
    check_balanced(h);
    return (*Y)[static_cast<std::size_t>(h) * dom->triples().size() + dom->triple_index(a, v, b)];
  }

 private:
  void check_balanced(int h) const {
    if (h >= dom->balanced_count()) throw DomainError("no table values at " + dom->seq(h).to_string());
  }
};

// R(p,y) evaluated lazily on heavy handles and memoised for one epoch.
template <class ScalarT>
class RMemo {
 public:
  using Scalar = ScalarT;
  using Handle = int;

  explicit RMemo(IndexedView<Scalar> base) : base_(base) {}

  Scalar r(Vertex a, Vertex b, int h) const {
    auto& slot = memo_[static_cast<std::uint64_t>(h) << 24 | static_cast<std::uint64_t>(a) << 12 |
                       static_cast<std::uint64_t>(b)];
    if (!slot.ready) {
      slot.value = apply_R(base_, h, a, b);
      slot.ready = true;
    }
    return slot.value;
  }

 private:
  struct Slot {
    Scalar value{};
    bool ready = false;
  };
  IndexedView<Scalar> base_;
  mutable std::unordered_map<std::uint64_t, Slot> memo_;
};

enum class SingularPolicy { raise, drop };

struct IterationOptions {
  double tol = 1e-10;
  int max_iter = 100;
  // drop: a sequence whose update hits a singular denominator loses its
  // value (and with it everything that reads it) instead of aborting.
  SingularPolicy on_singular = SingularPolicy::raise;
};

struct IterationStep {
  int iteration = 0;
  double max_rel_change = 0;
  double contraction = 0;  // change ratio to the previous step; 0 for step 1
  std::size_t valid_sequences = 0;
};

struct IterationReport {
  std::string backend;
  bool converged = false;
  int iterations = 0;
  std::string stop_reason;
  std::size_t domain_size = 0;
  std::size_t realisable = 0;
  std::size_t dropped_singular = 0;
  bool center_valid = true;
  std::vector<IterationStep> steps;

  // Largest contraction factor over steps 2.. (0 if fewer than two steps).
  double max_contraction_after_first() const;
};

// p_av = min(cap, d_a d_v / m), y_avb = p_av p_bv: a degree-aware start for
// the iteration.
class ProductFormSource {
 public:
  using Scalar = double;
  using Handle = DegreeSequence;

  explicit ProductFormSource(GraphClass cls, double cap = 0.99) : cls_(cls), cap_(cap) {}
  const GraphClass& graph_class() const { return cls_; }
  int degree(const DegreeSequence& d, Vertex x) const { return d[x]; }
  bool null(const DegreeSequence&) const { return false; }
  std::string describe(const DegreeSequence& d) const { return d.to_string(); }
  double p(Vertex a, Vertex v, const DegreeSequence& d) const {
    double m = static_cast<double>(d.sum_s());
    return m > 0 ? std::min(cap_, static_cast<double>(d[a]) * d[v] / m) : 0.0;
  }
  double y(Vertex a, Vertex v, Vertex b, const DegreeSequence& d) const { return p(a, v, d) * p(b, v, d); }

 private:
  GraphClass cls_;
  double cap_;
};

// Unrealisable flags for each sequence via max-flow.
std::vector<char> realisability_flags(const std::vector<DegreeSequence>& seqs, bool& any_null,
                                      std::size_t& realisable);

namespace detail {

template <class Scalar>
double relative_change(const Scalar& now, const Scalar& before) {
  using Tr = ScalarTraits<Scalar>;
  double a = Tr::to_double(now), b = Tr::to_double(before);
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0) return 0.0;
  Scalar diff = now - before;
  return std::abs(Tr::to_double(diff)) / scale;
}

}  // namespace detail

// Iterates C over `balanced_domain` (the first entry is the sequence of
// interest) starting from the values of `init`. A sequence keeps a valid value
// only while every sequence it reads is valid, so entries near the domain's
// lower boundary drop out as iterations proceed.
template <class Scalar, class InitSrc>
std::pair<ProbTables<Scalar>, IterationReport> iterate_fixpoint(
    const InitSrc& init, const std::vector<DegreeSequence>& balanced_domain,
    const IterationOptions& opt) {
  if (balanced_domain.empty()) throw PreconditionError("iterate_fixpoint: empty domain");
  const GraphClass cls = balanced_domain.front().graph_class();
  IterationReport rep;
  rep.backend = ScalarTraits<Scalar>::name;
  rep.domain_size = balanced_domain.size();
  bool any_null = false;
  std::vector<char> nulls = realisability_flags(balanced_domain, any_null, rep.realisable);
  IndexedDomain dom(cls, balanced_domain, nulls);
  const int B = dom.balanced_count();
  const std::size_t np = dom.pairs().size(), nt = dom.triples().size();

  std::vector<Scalar> P(static_cast<std::size_t>(B) * np, Scalar(0));
  std::vector<Scalar> Y(static_cast<std::size_t>(B) * nt, Scalar(0));
  for (int id = 0; id < B; ++id) {
    if (dom.null(id)) continue;
    const DegreeSequence& d = dom.seq(id);
    for (std::size_t k = 0; k < np; ++k) {
      auto [a, v] = dom.pairs()[k];
      P[id * np + k] = detail::lookup_p(init, a, v, d);
    }
    for (std::size_t k = 0; k < nt; ++k) {
      auto [a, v, b] = dom.triples()[k];
      Y[id * nt + k] = detail::lookup_y(init, a, v, b, d);
    }
  }

  std::vector<std::vector<int>> deps(static_cast<std::size_t>(B));
  std::vector<char> valid(static_cast<std::size_t>(B), 1), missing(static_cast<std::size_t>(B), 0);
  for (int id = 0; id < B; ++id) {
    bool miss = false;
    deps[id] = dom.dependencies(id, miss);
    missing[id] = miss;
  }

  double prev = 0;
  rep.stop_reason = "not converged: max_iter reached";
  for (int k = 1; k <= opt.max_iter; ++k) {
    std::vector<char> pvalid(static_cast<std::size_t>(B), 0), yvalid(static_cast<std::size_t>(B), 0);
    for (int id = 0; id < B; ++id) {
      if (dom.null(id)) {
        pvalid[id] = 1;
        continue;
      }
      bool ok = valid[id] && !missing[id];
      for (int dep : deps[id]) ok = ok && valid[dep];
      pvalid[id] = ok;
    }
    for (int id = 0; id < B; ++id) {
      bool ok = pvalid[id] != 0;
      if (!dom.null(id))
        for (int dep : deps[id]) ok = ok && pvalid[dep] && valid[dep];
      yvalid[id] = ok;
    }

    std::vector<Scalar> Pn = P, Yn = Y;
    IndexedView<Scalar> old{&dom, &P, &Y};
    RMemo<Scalar> rview(old);
    const bool drop = opt.on_singular == SingularPolicy::drop;
    try {
      for (int id = 0; id < B; ++id) {
        if (!pvalid[id] || dom.null(id)) continue;
        try {
          for (std::size_t q = 0; q < np; ++q) {
            auto [a, v] = dom.pairs()[q];
            Pn[id * np + q] = apply_P(old, rview, id, a, v);
          }
        } catch (const SingularityError&) {
          if (!drop) throw;
          pvalid[id] = 0;
          yvalid[id] = 0;
          ++rep.dropped_singular;
        }
      }
      if (drop)
        for (int id = 0; id < B; ++id) {
          if (!yvalid[id] || dom.null(id)) continue;
          for (int dep : deps[id]) yvalid[id] = yvalid[id] && pvalid[dep];
        }
      IndexedView<Scalar> fresh{&dom, &Pn, &Y};
      for (int id = 0; id < B; ++id) {
        if (!yvalid[id] || dom.null(id)) continue;
        try {
          for (std::size_t q = 0; q < nt; ++q) {
            auto [a, v, b] = dom.triples()[q];
            Yn[id * nt + q] = apply_Y(fresh, old, id, a, v, b);
          }
        } catch (const SingularityError&) {
          if (!drop) throw;
          yvalid[id] = 0;
          ++rep.dropped_singular;
        }
      }
    } catch (const SingularityError& e) {
      throw SingularityError("iteration " + std::to_string(k) + ": " + e.what());
    }

    double delta = 0;
    std::size_t nvalid = 0;
    for (int id = 0; id < B; ++id) {
      if (!yvalid[id]) continue;
      ++nvalid;
      if (dom.null(id)) continue;
      for (std::size_t q = 0; q < np; ++q)
        delta = std::max(delta, detail::relative_change(Pn[id * np + q], P[id * np + q]));
      for (std::size_t q = 0; q < nt; ++q)
        delta = std::max(delta, detail::relative_change(Yn[id * nt + q], Y[id * nt + q]));
    }
    P.swap(Pn);
    Y.swap(Yn);
    valid = yvalid;
    IterationStep step;
    step.iteration = k;
    step.max_rel_change = delta;
    step.contraction = k == 1 ? 0.0 : (prev > 0 ? delta / prev : 0.0);
    step.valid_sequences = nvalid;
    rep.steps.push_back(step);
    rep.iterations = k;
    prev = delta;
    if (!valid[0]) {
      rep.center_valid = false;
      rep.stop_reason = "radius exhausted";
      break;
    }
    if (delta < opt.tol) {
      rep.converged = true;
      rep.stop_reason = "tolerance reached";
      break;
    }
  }

  ProbTables<Scalar> out(cls);
  for (int id = 0; id < B; ++id) {
    if (!valid[id]) continue;
    const DegreeSequence& d = dom.seq(id);
    if (dom.null(id)) {
      out.mark_null(d);
      continue;
    }
    for (std::size_t q = 0; q < np; ++q) {
      auto [a, v] = dom.pairs()[q];
      out.set_p(a, v, d, P[id * np + q]);
    }
    for (std::size_t q = 0; q < nt; ++q) {
      auto [a, v, b] = dom.triples()[q];
      out.set_y(a, v, b, d, Y[id * nt + q]);
    }
  }
  return {std::move(out), std::move(rep)};
}

template <class Scalar, class InitSrc>
std::pair<ProbTables<Scalar>, IterationReport> iterate_fixpoint(const InitSrc& init,
                                                                 const NeighborhoodSpec& spec,
                                                                 const IterationOptions& opt) {
  return iterate_fixpoint<Scalar>(init, downward_domain(spec.center, spec.radius), opt);
}

}  // namespace degseq
