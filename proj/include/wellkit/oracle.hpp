#pragma once

#include <array>
#include <vector>

#include "wellkit/mesh.hpp"

namespace wellkit {

// Ground-truth killability checks, deliberately independent of the component
// and degree machinery. A sublevel component at radius r survives every
// perturbation of sup norm at most r exactly when no constant-sign push fits
// the budget; these helpers price such pushes directly from vertex values.

// Cheapest sup-norm budget that clears f - a off zero across one 1-D sublevel
// run. members must be consecutive vertex ids of the prepared mesh whose well
// value is at most radius. The run's continuous extent additionally pins the
// value s * radius at each side that crosses out through a neighbor of sign s
// (or leaves through the slope-one extension); a side ending at the raw
// domain boundary is free. delta is the strict-positivity margin.
double kill_cost_1d(const SampledMap& mesh, const TargetPoint& a, const std::vector<int>& members,
                    double radius, double delta, bool extension);

// Number of 1-D sublevel runs at the given radius that no budget-r push can
// kill. Runs are found by a direct scan over consecutive vertices.
int oracle_well_rank(const SampledMap& mesh, const TargetPoint& a, double radius, double delta,
                     bool extension);

// Budget needed to push the component's values strictly past the target along
// the unit direction dir (2-D). Uses member vertices only, so it lower-bounds
// the true kill cost up to mesh resolution.
double directional_kill_cost(const SampledMap& mesh, const TargetPoint& a,
                             const std::vector<int>& members, const std::array<double, 2>& dir,
                             double delta);

}  // namespace wellkit
