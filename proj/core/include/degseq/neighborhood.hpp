#pragma once

#include <vector>

#include "degseq/model.hpp"

namespace degseq {

enum class Heaviness { balanced, S_heavy };

struct NeighborhoodSpec {
  DegreeSequence center;
  int radius = 0;
  Heaviness heaviness = Heaviness::balanced;

  // All sequences with nonnegative entries at L1 distance <= radius from the
  // center and with the requested balance state, in lexicographic order.
  std::vector<DegreeSequence> enumerate() const;
};

// Balanced sequences d with d <= center entrywise and |center - d|_1 <= radius,
// ordered by decreasing total degree. The operators only ever look up
// decremented sequences, so this is the part of the ball they can reach.
std::vector<DegreeSequence> downward_domain(const DegreeSequence& center, int radius);

}  // namespace degseq
