#include "wellkit/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wellkit/error.hpp"
#include "wellkit/persistence.hpp"

namespace wellkit {

namespace {

std::vector<double> expand(const WellDiagram& d) {
  std::vector<double> out;
  for (const auto& p : d.points) {
    if (out.size() + p.multiplicity > 10000)
      throw SizeLimitError("diagram expands past 10^4 points");
    for (int i = 0; i < p.multiplicity; ++i) out.push_back(p.value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double gap(double u, double v) {
  if (std::isinf(u) && std::isinf(v)) return 0.0;
  if (std::isinf(u) || std::isinf(v)) return kInf;
  return std::abs(u - v);
}

}  // namespace

MatchingResult match_diagrams(const WellDiagram& a, const WellDiagram& b) {
  std::vector<double> u = expand(a), v = expand(b);
  size_t n = std::max(u.size(), v.size());
  u.resize(n, 0.0);
  v.resize(n, 0.0);
  std::sort(u.begin(), u.end());
  std::sort(v.begin(), v.end());

  MatchingResult res;
  for (size_t i = 0; i < n; ++i) {
    res.pairs.push_back({u[i], v[i]});
    res.bottleneck = std::max(res.bottleneck, gap(u[i], v[i]));
  }
  return res;
}

double brute_force_bottleneck(const WellDiagram& a, const WellDiagram& b) {
  std::vector<double> u = expand(a), v = expand(b);
  size_t n = std::max(u.size(), v.size());
  if (n > 8) throw SizeLimitError("brute force capped at 8 points");
  u.resize(n, 0.0);
  v.resize(n, 0.0);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  if (n == 0) return 0.0;
  do {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) worst = std::max(worst, gap(u[i], v[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace wellkit
