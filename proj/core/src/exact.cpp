#include "degseq/exact.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

using Mask = std::uint64_t;
constexpr int kMaxColumns = 64;

struct BinomialTable {
  std::array<std::array<std::uint64_t, kMaxColumns + 1>, kMaxColumns + 1> c{};
  BinomialTable() {
    for (int n = 0; n <= kMaxColumns; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

// A 0-1 matrix counting problem: row sums, column sums, excluded cells.
struct MarginProblem {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<Mask> excl;  // bit j of excl[i]: cell (i,j) must be 0
};

void transpose(MarginProblem& p) {
  MarginProblem q;
  q.rows = p.cols;
  q.cols = p.rows;
  q.excl.assign(q.rows.size(), 0);
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (std::size_t j = 0; j < p.cols.size(); ++j)
      if (p.excl[i] >> j & 1) q.excl[j] |= Mask{1} << i;
  p = std::move(q);
}

// Drops empty rows/columns, orients the matrix with the fewer rows, and
// orders columns by decreasing sum. Returns false if trivially infeasible.
bool normalise(MarginProblem& p) {
  // Drop zero rows, then zero columns (remapping exclusion bits).
  {
    MarginProblem q;
    for (std::size_t i = 0; i < p.rows.size(); ++i)
      if (p.rows[i] > 0) {
        q.rows.push_back(p.rows[i]);
        q.excl.push_back(p.excl[i]);
      }
    std::vector<int> keep;
    for (std::size_t j = 0; j < p.cols.size(); ++j)
      if (p.cols[j] > 0) keep.push_back(static_cast<int>(j));
    for (int j : keep) q.cols.push_back(p.cols[j]);
    for (Mask& m : q.excl) {
      Mask r = 0;
      for (std::size_t k = 0; k < keep.size(); ++k)
        if (m >> keep[k] & 1) r |= Mask{1} << k;
      m = r;
    }
    p = std::move(q);
  }
  if (p.rows.size() > p.cols.size() && p.rows.size() <= kMaxColumns) transpose(p);
  if (p.cols.size() > kMaxColumns) {
    bool any = std::any_of(p.excl.begin(), p.excl.end(), [](Mask m) { return m != 0; });
    if (any) throw ResourceCapError("excluded cells supported for at most 64 columns", kMaxColumns);
  }
  for (int r : p.rows)
    if (r > 255) throw ResourceCapError("row sums above 255 are not supported", 255);
  const int C = static_cast<int>(p.cols.size());
  std::vector<int> order(static_cast<std::size_t>(C));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return p.cols[x] > p.cols[y]; });
  std::vector<int> cols(static_cast<std::size_t>(C));
  for (int k = 0; k < C; ++k) cols[k] = p.cols[order[k]];
  for (Mask& m : p.excl) {
    Mask r = 0;
    for (int k = 0; k < C; ++k)
      if (m >> order[k] & 1) r |= Mask{1} << k;
    m = r;
  }
  p.cols = std::move(cols);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    int allowed = C - std::popcount(p.excl[i]);
    if (p.rows[i] > allowed) return false;
  }
  return true;
}

template <class Count>
class ColumnDP {
 public:
  ColumnDP(const MarginProblem& p, const CountLimits& limits) : p_(p), limits_(limits) {
    R_ = static_cast<int>(p.rows.size());
    C_ = static_cast<int>(p.cols.size());
    groups_.resize(static_cast<std::size_t>(C_) + 1);
    open_.resize(static_cast<std::size_t>(C_) + 1);
    avail_.assign(static_cast<std::size_t>(C_) + 1, std::vector<int>(static_cast<std::size_t>(R_)));
    for (int j = 0; j <= C_; ++j) {
      std::map<Mask, std::vector<int>> by_sig;
      for (int i = 0; i < R_; ++i) {
        Mask sig = j >= kMaxColumns ? 0 : p.excl[i] >> j;
        by_sig[sig].push_back(i);
        avail_[j][i] = (C_ - j) - std::popcount(sig);
      }
      for (auto& [sig, rows] : by_sig) {
        groups_[j].push_back(rows);
        open_[j].push_back(j < C_ && !(sig & 1));
      }
    }
    memo_.resize(static_cast<std::size_t>(C_) + 1);
  }

  Count run() {
    std::string st(static_cast<std::size_t>(R_), '\0');
    for (int i = 0; i < R_; ++i) st[i] = static_cast<char>(p_.rows[i]);
    canonicalise(0, st);
    return solve(0, st);
  }

 private:
  struct Bucket {
    int first;  // position in `rows_in_order`
    int size;
  };

  void canonicalise(int j, std::string& st) const {
    std::vector<unsigned char> vals;
    for (const auto& rows : groups_[j]) {
      vals.clear();
      for (int i : rows) vals.push_back(static_cast<unsigned char>(st[i]));
      std::sort(vals.begin(), vals.end(), std::greater<>());
      for (std::size_t k = 0; k < rows.size(); ++k) st[rows[k]] = static_cast<char>(vals[k]);
    }
  }

  Count solve(int j, const std::string& st) {
    if (j == C_) {
      for (char c : st)
        if (c != 0) return Count(0);
      return Count(1);
    }
    auto& memo = memo_[j];
    if (auto it = memo.find(st); it != memo.end()) return it->second;

    Count total(0);
    bool feasible = true;
    for (int i = 0; i < R_; ++i)
      if (static_cast<unsigned char>(st[i]) > avail_[j][i]) {
        feasible = false;
        break;
      }
    if (feasible) {
      // Buckets: maximal runs of equal positive residual inside each open group.
      std::vector<int> order;
      std::vector<Bucket> buckets;
      const auto& groups = groups_[j];
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (!open_[j][g]) continue;
        const auto& rows = groups[g];
        std::size_t k = 0;
        while (k < rows.size()) {
          unsigned char v = static_cast<unsigned char>(st[rows[k]]);
          std::size_t e = k;
          while (e < rows.size() && static_cast<unsigned char>(st[rows[e]]) == v) ++e;
          if (v > 0) {
            buckets.push_back({static_cast<int>(order.size()), static_cast<int>(e - k)});
            for (std::size_t q = k; q < e; ++q) order.push_back(rows[q]);
          }
          k = e;
        }
      }
      std::vector<int> suffix(buckets.size() + 1, 0);
      for (std::size_t b = buckets.size(); b-- > 0;) suffix[b] = suffix[b + 1] + buckets[b].size;
      int need = p_.cols[j];
      if (need <= suffix[0]) {
        std::vector<int> pick(buckets.size(), 0);
        enumerate(j, st, order, buckets, suffix, pick, 0, need, total);
      }
    }
    if (++entries_ > limits_.max_memo)
      throw ResourceCapError("count: memo entries exceed cap " + std::to_string(limits_.max_memo),
                             limits_.max_memo);
    memo.emplace(st, total);
    return total;
  }

  void enumerate(int j, const std::string& st, const std::vector<int>& order,
                 const std::vector<Bucket>& buckets, const std::vector<int>& suffix,
                 std::vector<int>& pick, std::size_t b, int need, Count& total) {
    if (need == 0) {
      if (++terms_ > limits_.max_terms)
        throw ResourceCapError("count: transitions exceed cap " + std::to_string(limits_.max_terms),
                               limits_.max_terms);
      std::string next = st;
      Count weight(1);
      const auto& C = binomials().c;
      for (std::size_t q = 0; q < b; ++q) {
        for (int r = 0; r < pick[q]; ++r) --next[order[buckets[q].first + r]];
        if (pick[q] > 0) weight *= Count(C[buckets[q].size][pick[q]]);
      }
      canonicalise(j + 1, next);
      total += weight * solve(j + 1, next);
      return;
    }
    if (b == buckets.size() || suffix[b] < need) return;
    int hi = std::min(need, buckets[b].size);
    for (int c = hi; c >= 0; --c) {
      if (suffix[b + 1] < need - c) break;
      pick[b] = c;
      enumerate(j, st, order, buckets, suffix, pick, b + 1, need - c, total);
    }
    pick[b] = 0;
  }

  const MarginProblem& p_;
  const CountLimits& limits_;
  int R_ = 0;
  int C_ = 0;
  std::vector<std::vector<std::vector<int>>> groups_;
  std::vector<std::vector<char>> open_;
  std::vector<std::vector<int>> avail_;
  std::vector<std::unordered_map<std::string, Count>> memo_;
  std::size_t entries_ = 0;
  std::size_t terms_ = 0;
};

BigCount count_problem(MarginProblem p, const CountLimits& limits) {
  long long rs = std::accumulate(p.rows.begin(), p.rows.end(), 0LL);
  long long cs = std::accumulate(p.cols.begin(), p.cols.end(), 0LL);
  if (rs != cs) return 0;
  if (!normalise(p)) return 0;
  if (p.rows.empty()) return 1;
  // Counts are below 2^(cells), so 64-bit arithmetic is exact for small grids.
  if (p.rows.size() * p.cols.size() <= 63) {
    ColumnDP<std::uint64_t> dp(p, limits);
    return BigCount(static_cast<unsigned long>(dp.run()));
  }
  ColumnDP<BigCount> dp(p, limits);
  return dp.run();
}

std::string cache_key(const DegreeSequence& d, const ForbiddenSet& F, const std::vector<Edge>& forced) {
  std::string key;
  key += d.graph_class().is_digraph() ? 'D' : 'B';
  key += std::to_string(d.graph_class().ell()) + ':';
  for (int x : d.degrees()) key += std::to_string(x) + ',';
  key += '|';
  for (const Edge& e : F.pairs()) key += std::to_string(e.a) + '-' + std::to_string(e.v) + ',';
  key += '|';
  for (const Edge& e : forced) key += std::to_string(e.a) + '-' + std::to_string(e.v) + ',';
  return key;
}

}  // namespace

struct ExactEngine::Cache {
  std::mutex mu;
  std::unordered_map<std::string, BigCount> values;
};

ExactEngine::ExactEngine(CountLimits limits, bool cache_results) : limits_(limits) {
  if (cache_results) cache_ = std::make_unique<Cache>();
}

ExactEngine::~ExactEngine() = default;
ExactEngine::ExactEngine(ExactEngine&&) noexcept = default;
ExactEngine& ExactEngine::operator=(ExactEngine&&) noexcept = default;

BigCount ExactEngine::count(const DegreeSequence& d, const ForbiddenSet& forbidden,
                            const std::vector<Edge>& forced) const {
  const GraphClass& cls = d.graph_class();
  std::vector<Edge> k;
  k.reserve(forced.size());
  for (const Edge& e : forced) {
    Edge n = make_edge(cls, e.a, e.v);
    if (forbidden.contains(n))
      throw PreconditionError("pair (" + std::to_string(n.a) + "," + std::to_string(n.v) +
                              ") is both forced and forbidden");
    k.push_back(n);
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());

  std::string key;
  if (cache_) {
    key = cache_key(d, forbidden, k);
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }

  const int ell = cls.ell(), n = cls.n();
  MarginProblem p;
  p.rows.assign(d.s().begin(), d.s().end());
  p.cols.assign(d.t().begin(), d.t().end());
  p.excl.assign(static_cast<std::size_t>(ell), 0);
  if (n > kMaxColumns && (cls.is_digraph() || !forbidden.empty() || !k.empty()))
    throw ResourceCapError("excluded cells supported for at most 64 columns", kMaxColumns);
  if (cls.is_digraph())
    for (int i = 0; i < ell; ++i) p.excl[i] |= Mask{1} << i;
  for (const Edge& e : forbidden.pairs()) p.excl[e.a - 1] |= Mask{1} << (e.v - ell - 1);
  bool underflow = false;
  for (const Edge& e : k) {
    p.excl[e.a - 1] |= Mask{1} << (e.v - ell - 1);
    if (--p.rows[e.a - 1] < 0 || --p.cols[e.v - ell - 1] < 0) underflow = true;
  }
  BigCount result = underflow ? BigCount(0) : count_problem(std::move(p), limits_);

  if (cache_) {
    std::lock_guard lock(cache_->mu);
    cache_->values.emplace(std::move(key), result);
  }
  return result;
}

ExactProb ExactEngine::edge_prob(const DegreeSequence& d, Vertex a, Vertex v) const {
  Edge e = make_edge(d.graph_class(), a, v);
  BigCount total = count(d);
  if (total == 0) throw UndefinedError("edge probability undefined: N(d) = 0 for " + d.to_string());
  ExactProb q(count(d, {}, {e}), total);
  q.canonicalize();
  return q;
}

ExactProb ExactEngine::path_prob(const DegreeSequence& d, Vertex a, Vertex v, Vertex b) const {
  if (a == b) throw PreconditionError("path probability needs a != b");
  Edge e1 = make_edge(d.graph_class(), a, v);
  Edge e2 = make_edge(d.graph_class(), b, v);
  BigCount total = count(d);
  if (total == 0) throw UndefinedError("path probability undefined: N(d) = 0 for " + d.to_string());
  ExactProb q(count(d, {}, {e1, e2}), total);
  q.canonicalize();
  return q;
}

ExactProb ExactEngine::ratio(const DegreeSequence& d, Vertex a, Vertex b) const {
  const GraphClass& cls = d.graph_class();
  if (!cls.valid(a) || !cls.valid(b) || !cls.same_part(a, b))
    throw PreconditionError("ratio needs a and b in the same part");
  if (a == b) return ExactProb(1);
  auto da = try_perturb(d, {a});
  auto db = try_perturb(d, {b});
  BigCount den = db ? count(*db) : BigCount(0);
  if (den == 0) throw UndefinedError("ratio undefined: N(d - e_b) = 0 for " + d.to_string());
  BigCount num = da ? count(*da) : BigCount(0);
  ExactProb q(num, den);
  q.canonicalize();
  return q;
}

std::optional<Rational> switching_bound(const DegreeSequence& d) {
  long long M1 = d.sum_s();
  long dS = *std::max_element(d.s().begin(), d.s().end());
  long dT = *std::max_element(d.t().begin(), d.t().end());
  // M1 (1 - 2(dS+1)(dT+1)/M1) = M1 - 2(dS+1)(dT+1)
  long den = static_cast<long>(M1) - 2 * (dS + 1) * (dT + 1);
  if (M1 <= 0 || den <= 0) return std::nullopt;
  Rational q(dS * dT, den);
  q.canonicalize();
  return q;
}

}  // namespace degseq
