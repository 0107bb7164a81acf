#pragma once

#include <cstdint>
#include <vector>

#include "wellkit/wellcore.hpp"

namespace wellkit {

// Robustness of the fixed points of a sampled self-map b, computed on the
// displacement f(x) = x - b(x) with target 0 under the clamped extension.
struct FixedPointResult {
  WellDiagram diagram;
  std::vector<ZeroPoint> points;
  bool self_map_violated = false;  // some value of b leaves the box; tolerated
};

FixedPointResult fixed_point_robustness(const SampledMap& b);

// Fixed points of the period-fold composite of b. Unrestricted robustness is
// exact for the composite map; the composite-sampled search additionally
// prices perturbations that stay composites of a single perturbed copy of b,
// an upper-bound heuristic since no exact algorithm is available.
struct OrbitPoint {
  ZeroPoint zero;
  // Smallest draw radius r whose sampled h (with sup|h - b| <= r) killed this
  // orbit, and the realized sup distance between the composites of h and b.
  double composite_draw_bound = 0.0;
  double composite_realized = 0.0;
};

struct OrbitResult {
  int period = 1;
  WellDiagram diagram;
  std::vector<OrbitPoint> points;
  bool composite_mode = false;
  bool self_map_violated = false;
};

// period >= 1. composite sampling requires samples >= 1. jitter applies when
// the resampled composite loses genericity; the identically-degenerate case
// (composite equal to the identity) always throws NonGenericError.
OrbitResult orbit_robustness(const SampledMap& b, int period, bool composite_sampled = false,
                             int samples = 0, uint64_t seed = 0, bool jitter = false);

// Exact piecewise-linear composite of a 1-D self-map with itself, iterates
// clamped to the domain. Breakpoint growth is capped at 2 * 10^5.
SampledMap composite_1d(const SampledMap& b, int period);

// Robustness of the full preimage f^{-1}(a) over a rectangular grid of
// targets: the largest well diagram value per target, 0 on empty preimages.
struct ContourCell {
  double ax = 0.0, ay = 0.0;
  double value = 0.0;
  bool jittered = false;
  bool boundary_limited = false;
};

struct ContourField {
  TriangulatedRect grid;            // descriptor of the target grid
  std::vector<ContourCell> cells;   // row-major, y outer
};

ContourField contour_field(const SampledMap& f, const TriangulatedRect& a_grid);
ContourField contour_field_serial(const SampledMap& f, const TriangulatedRect& a_grid);

}  // namespace wellkit
