#include "degseq/realizability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "degseq/errors.hpp"

namespace degseq {

Edge make_edge(const GraphClass& cls, Vertex x, Vertex y) {
  if (!cls.allowable(x, y))
    throw PreconditionError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                            ") is not allowable");
  if (cls.in_T(x)) std::swap(x, y);
  return Edge{x, y};
}

ForbiddenSet::ForbiddenSet(const GraphClass& cls, const std::vector<Edge>& pairs, int C)
    : C_(C) {
  if (C < 1) throw PreconditionError("forbidden-set multiplicity bound C must be positive");
  for (const Edge& e : pairs) pairs_.push_back(make_edge(cls, e.a, e.v));
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool ForbiddenSet::contains(Edge e) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), e);
}

int ForbiddenSet::max_multiplicity(const GraphClass& cls) const {
  std::vector<int> mult(static_cast<std::size_t>(cls.vertex_count()) + 1, cls.delta_di());
  for (const Edge& e : pairs_) {
    ++mult[static_cast<std::size_t>(e.a)];
    ++mult[static_cast<std::size_t>(e.v)];
  }
  return *std::max_element(mult.begin() + 1, mult.end());
}

namespace {

// Dinic on a small dense network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  void add_edge(int u, int v, int cap) {
    adj_[u].push_back({v, cap, static_cast<int>(adj_[v].size())});
    adj_[v].push_back({u, 0, static_cast<int>(adj_[u].size()) - 1});
  }

  long long run(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (int f = dfs(s, t, std::numeric_limits<int>::max())) flow += f;
    }
    return flow;
  }

 private:
  struct Arc {
    int to, cap, rev;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Arc& e : adj_[u])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      Arc& e = adj_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      int got = dfs(e.to, t, std::min(f, e.cap));
      if (got > 0) {
        e.cap -= got;
        adj_[e.to][e.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

FeasibilityResult feasible_exact(const DegreeSequence& d, const ForbiddenSet& F) {
  const GraphClass& cls = d.graph_class();
  long long m = d.sum_s();
  if (m != d.sum_t())
    return {false, "unbalanced: sum(s)=" + std::to_string(m) +
                       " != sum(t)=" + std::to_string(d.sum_t())};
  const int ell = cls.ell(), n = cls.n();
  const int source = 0, sink = ell + n + 1;
  MaxFlow net(ell + n + 2);
  for (Vertex a = 1; a <= ell; ++a) net.add_edge(source, a, d[a]);
  for (Vertex v = ell + 1; v <= ell + n; ++v) net.add_edge(v, sink, d[v]);
  for (Vertex a = 1; a <= ell; ++a)
    for (Vertex v = ell + 1; v <= ell + n; ++v)
      if (cls.allowable(a, v) && !F.contains({a, v})) net.add_edge(a, v, 1);
  long long flow = net.run(source, sink);
  if (flow == m) return {true, "max-flow saturates all degrees"};
  return {false, "max-flow value " + std::to_string(flow) + " < " + std::to_string(m)};
}

const char* to_string(Sufficiency s) {
  return s == Sufficiency::guaranteed ? "guaranteed" : "unknown";
}

SufficientResult feasible_sufficient(const DegreeSequence& d, const ForbiddenSet& F) {
  const GraphClass& cls = d.graph_class();
  for (Vertex x = 1; x <= cls.vertex_count(); ++x)
    if (d[x] < 1)
      throw PreconditionError("sufficient test needs every degree >= 1; vertex " +
                              std::to_string(x) + " has degree 0");
  int mult = F.max_multiplicity(cls);
  if (mult > F.C())
    throw PreconditionError("exclusion multiplicity " + std::to_string(mult) +
                            " exceeds C=" + std::to_string(F.C()));
  if (d.sum_s() != d.sum_t()) return {Sufficiency::unknown, "unbalanced"};

  const double m = static_cast<double>(d.sum_s());
  const double ell = cls.ell(), n = cls.n();
  const int dS = *std::max_element(d.s().begin(), d.s().end());
  const int dT = *std::max_element(d.t().begin(), d.t().end());
  // Branch (a): integer comparisons where possible, 9m <= ell*n.
  bool a_ok = 9.0 * m <= ell * n && dS * ell <= 2.0 * m && dT * n <= 2.0 * m;
  if (a_ok) return {Sufficiency::guaranteed, "branch (a): m <= ell*n/9, max degrees <= twice the means"};
  double cap = std::sqrt(m) / 2.0 - F.C();
  bool b_ok = dS <= cap && dT <= cap;
  if (b_ok) return {Sufficiency::guaranteed, "branch (b): max degrees <= sqrt(m)/2 - C"};
  return {Sufficiency::unknown, "neither sufficient branch applies"};
}

}  // namespace degseq
