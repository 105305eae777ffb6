#include "degseq/neighborhood.hpp"

#include <algorithm>
#include <cstdlib>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

void walk(const std::vector<int>& c, std::size_t i, int budget, std::vector<int>& cur,
          const GraphClass& cls, Heaviness h, std::vector<DegreeSequence>& out) {
  if (i == c.size()) {
    DegreeSequence d = DegreeSequence::from_degrees(cls, cur);
    Balance b = balance_state(d);
    if ((h == Heaviness::balanced && b == Balance::balanced) ||
        (h == Heaviness::S_heavy && b == Balance::S_heavy))
      out.push_back(std::move(d));
    return;
  }
  for (int delta = -budget; delta <= budget; ++delta) {
    int v = c[i] + delta;
    if (v < 0) continue;
    cur[i] = v;
    walk(c, i + 1, budget - std::abs(delta), cur, cls, h, out);
  }
  cur[i] = c[i];
}

void walk_down(const std::vector<int>& c, std::size_t i, int budget, std::vector<int>& cur,
               const GraphClass& cls, std::vector<DegreeSequence>& out) {
  if (i == c.size()) {
    DegreeSequence d = DegreeSequence::from_degrees(cls, cur);
    if (balance_state(d) == Balance::balanced) out.push_back(std::move(d));
    return;
  }
  for (int drop = 0; drop <= std::min(budget, c[i]); ++drop) {
    cur[i] = c[i] - drop;
    walk_down(c, i + 1, budget - drop, cur, cls, out);
  }
  cur[i] = c[i];
}

}  // namespace

std::vector<DegreeSequence> NeighborhoodSpec::enumerate() const {
  if (radius < 0) throw PreconditionError("neighborhood radius must be nonnegative");
  std::vector<DegreeSequence> out;
  std::vector<int> cur = center.degrees();
  walk(center.degrees(), 0, radius, cur, center.graph_class(), heaviness, out);
  std::sort(out.begin(), out.end(),
            [](const DegreeSequence& x, const DegreeSequence& y) { return x.degrees() < y.degrees(); });
  return out;
}

std::vector<DegreeSequence> downward_domain(const DegreeSequence& center, int radius) {
  if (radius < 0) throw PreconditionError("neighborhood radius must be nonnegative");
  std::vector<DegreeSequence> out;
  std::vector<int> cur = center.degrees();
  walk_down(center.degrees(), 0, radius, cur, center.graph_class(), out);
  std::stable_sort(out.begin(), out.end(), [](const DegreeSequence& x, const DegreeSequence& y) {
    return x.sum_s() > y.sum_s();
  });
  return out;
}

}  // namespace degseq
