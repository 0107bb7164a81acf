#pragma once

#include <cstdint>
#include <string>

#include "wellkit/matching.hpp"
#include "wellkit/wellcore.hpp"

namespace wellkit {

struct StabilityReport {
  std::string check;
  int trials = 0;
  int violations = 0;
  double worst_slack = 0.0;  // min over trials of bound - observed
  uint64_t seed = 0;
};

// Single-instance checks. The slack-valued ones return bound - observed;
// anything below -1e-9 * value scale counts as a violation.

// Distance between the two maps' target-distance functions never exceeds the
// distance between the maps. Both sides evaluated exactly at the union of the
// prepared break points.
double check_distance_lemma(const SampledMap& f, const SampledMap& g, const TargetPoint& a);

// Bottleneck distance between the two well diagrams never exceeds the sup
// distance between the maps.
double check_stability(const SampledMap& f, const SampledMap& g, const TargetPoint& a);

// Classes only fall ill along the module: the image of each group spans the
// next one.
bool check_shrinking_wellness(const WellModule& mod);

// With eps the vertexwise distance between f and g on f's prepared mesh,
// every well component of f at radius + eps contains a sublevel component of
// g at radius. Meaningful when eps <= radius.
bool check_bridge(const SampledMap& f, const SampledMap& g, const TargetPoint& a, double radius);

// Randomized suites over 1-D meshes of 4 to 16 vertices with values in
// [-1, 1], target 0. Trials run in parallel with per-trial seeds.
StabilityReport distance_lemma_suite(int trials, uint64_t seed);
StabilityReport stability_suite(int trials, uint64_t seed);
StabilityReport shrinking_suite(int trials, uint64_t seed);
StabilityReport bridge_suite(int trials, uint64_t seed);

}  // namespace wellkit
