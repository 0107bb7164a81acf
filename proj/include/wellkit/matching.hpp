#pragma once

#include <array>
#include <vector>

#include "wellkit/wellcore.hpp"

namespace wellkit {

struct MatchingResult {
  // Matched value pairs (left diagram, right diagram), ascending in both
  // coordinates. Points without a partner are paired with 0, the value of a
  // class that can be killed by an arbitrarily small perturbation.
  std::vector<std::array<double, 2>> pairs;
  double bottleneck = 0.0;
};

// Optimal bottleneck matching between two well diagrams. Values live on a
// half-line with 0 as the diagonal, where sorted index-wise pairing is
// optimal. Multiplicities beyond 10^4 expanded points raise SizeLimitError.
MatchingResult match_diagrams(const WellDiagram& a, const WellDiagram& b);

// Reference answer minimizing over every permutation of at most 8 expanded
// points per side.
double brute_force_bottleneck(const WellDiagram& a, const WellDiagram& b);

}  // namespace wellkit
