#include "degseq/iteration.hpp"

#include "degseq/realizability.hpp"

namespace degseq {

IndexedDomain::IndexedDomain(GraphClass cls, std::vector<DegreeSequence> balanced,
                             std::vector<char> null_flags)
    : cls_(cls), null_(std::move(null_flags)) {
  if (null_.size() != balanced.size()) throw PreconditionError("IndexedDomain: flag count mismatch");
  const int N = cls_.vertex_count();
  stride_ = static_cast<std::size_t>(N) + 1;
  balanced_count_ = static_cast<int>(balanced.size());
  seqs_ = std::move(balanced);
  for (int id = 0; id < balanced_count_; ++id) {
    if (!(seqs_[id].graph_class() == cls_)) throw PreconditionError("IndexedDomain: mixed graph classes");
    if (!index_.emplace(seqs_[id], id).second)
      throw PreconditionError("IndexedDomain: duplicate sequence " + seqs_[id].to_string());
  }
  // heavy handles: one decrement away from a balanced sequence
  for (int id = 0; id < balanced_count_; ++id)
    for (Vertex x = 1; x <= N; ++x) {
      if (seqs_[id][x] == 0) continue;
      DegreeSequence h = perturb(seqs_[id], {x});
      if (index_.count(h)) continue;
      index_.emplace(h, static_cast<int>(seqs_.size()));
      seqs_.push_back(std::move(h));
    }
  minus_.assign(seqs_.size() * stride_, -1);
  for (std::size_t id = 0; id < seqs_.size(); ++id)
    for (Vertex x = 1; x <= N; ++x) {
      if (seqs_[id][x] == 0) continue;
      auto it = index_.find(perturb(seqs_[id], {x}));
      if (it != index_.end()) minus_[id * stride_ + x] = it->second;
    }

  pair_idx_.assign(stride_ * stride_, -1);
  triple_idx_.assign(stride_ * stride_ * stride_, -1);
  for (Vertex a = 1; a <= N; ++a)
    for (Vertex v = 1; v <= N; ++v) {
      if (!cls_.in_S(a) || !cls_.allowable(a, v)) continue;
      pair_idx_[a * stride_ + v] = static_cast<int>(pairs_.size());
      pairs_.emplace_back(a, v);
    }
  for (Vertex a = 1; a <= N; ++a)
    for (Vertex v = 1; v <= N; ++v) {
      if (!cls_.allowable(a, v)) continue;
      if (!cls_.in_S(a) && pair_idx_[a * stride_ + v] < 0) {
        // T-side ordered pairs are stored too so lookups from either end work
        pair_idx_[a * stride_ + v] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(a, v);
      }
      for (Vertex b = 1; b <= N; ++b) {
        if (b == a || !cls_.allowable(b, v)) continue;
        triple_idx_[(a * stride_ + v) * stride_ + b] = static_cast<int>(triples_.size());
        triples_.push_back({a, v, b});
      }
    }
}

int IndexedDomain::find(const DegreeSequence& d) const {
  auto it = index_.find(d);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> IndexedDomain::dependencies(int id, bool& missing) const {
  missing = false;
  std::vector<int> out;
  const int N = cls_.vertex_count();
  for (Vertex x = 1; x <= N; ++x) {
    if (degree(id, x) == 0) continue;
    int h = minus(id, x);
    for (Vertex w = 1; w <= N; ++w) {
      if (!cls_.allowable(x, w) || degree(id, w) == 0) continue;
      int g = h < 0 ? -1 : minus(h, w);
      if (g < 0 || g >= balanced_count_) {
        missing = true;
        continue;
      }
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double IterationReport::max_contraction_after_first() const {
  double m = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) m = std::max(m, steps[i].contraction);
  return m;
}

std::vector<char> realisability_flags(const std::vector<DegreeSequence>& seqs, bool& any_null,
                                      std::size_t& realisable) {
  std::vector<char> out(seqs.size(), 0);
  any_null = false;
  realisable = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    bool ok = feasible_exact(seqs[i]).feasible;
    out[i] = ok ? 0 : 1;
    if (ok)
      ++realisable;
    else
      any_null = true;
  }
  return out;
}

}  // namespace degseq
