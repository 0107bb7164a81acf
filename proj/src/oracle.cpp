#include "wellkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wellkit {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

double kill_cost_1d(const SampledMap& mesh, const TargetPoint& a, const std::vector<int>& members,
                    double radius, double delta, bool extension) {
  double aa = a.a[0];
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int v : members) {
    double g = mesh.value(v, 0) - aa;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }

  int lm = members.front(), rm = members.back();
  if (lm > 0) {
    double s = mesh.value(lm - 1, 0) - aa > 0 ? 1.0 : -1.0;
    lo = std::min(lo, s * radius);
    hi = std::max(hi, s * radius);
  } else if (extension) {
    lo = std::min(lo, -radius);
  }
  if (rm < mesh.vertex_count() - 1) {
    double s = mesh.value(rm + 1, 0) - aa > 0 ? 1.0 : -1.0;
    lo = std::min(lo, s * radius);
    hi = std::max(hi, s * radius);
  } else if (extension) {
    hi = std::max(hi, radius);
  }

  double up = std::max(0.0, delta - lo);
  double down = std::max(0.0, hi + delta);
  return std::min(up, down);
}

int oracle_well_rank(const SampledMap& mesh, const TargetPoint& a, double radius, double delta,
                     bool extension) {
  double aa = a.a[0];
  int n = mesh.vertex_count();
  int rank = 0;
  int v = 0;
  while (v < n) {
    if (std::abs(mesh.value(v, 0) - aa) > radius) {
      ++v;
      continue;
    }
    std::vector<int> run;
    while (v < n && std::abs(mesh.value(v, 0) - aa) <= radius) run.push_back(v++);
    if (kill_cost_1d(mesh, a, run, radius, delta, extension) > radius + kTol) ++rank;
  }
  return rank;
}

double directional_kill_cost(const SampledMap& mesh, const TargetPoint& a,
                             const std::vector<int>& members, const std::array<double, 2>& dir,
                             double delta) {
  double worst = std::numeric_limits<double>::infinity();
  for (int v : members) {
    double d = (mesh.value(v, 0) - a.a[0]) * dir[0] + (mesh.value(v, 1) - a.a[1]) * dir[1];
    worst = std::min(worst, d);
  }
  return delta + std::max(0.0, -worst);
}

}  // namespace wellkit
