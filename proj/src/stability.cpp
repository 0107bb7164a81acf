#include "wellkit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wellkit/persistence.hpp"

namespace wellkit {

namespace {

double well_value_at(const SampledMap& m, const TargetPoint& a, double x) {
  auto v = eval(m, x);
  double s = 0.0;
  for (size_t k = 0; k < v.size(); ++k) s += (v[k] - a.a[k]) * (v[k] - a.a[k]);
  return std::sqrt(s);
}

std::vector<double> union_breakpoints(const SampledMap& f, const SampledMap& g,
                                      const TargetPoint& a) {
  WellOptions opts;
  opts.jitter = true;
  std::vector<double> xs;
  for (double x : prepare_map(f, a, opts).px) xs.push_back(x);
  for (double x : prepare_map(g, a, opts).px) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

SampledMap random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  int n = 4 + (int)(rng() % 13);
  std::vector<std::vector<double>> vals(n);
  for (auto& v : vals) v = {val(rng)};
  return build_map(Interval1D{0.0, 1.0, n}, vals, 1);
}

SampledMap perturb(const SampledMap& f, double eps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> noise(-eps, eps);
  SampledMap g = f;
  for (double& v : g.values) v += noise(rng);
  return g;
}

// Sup distance between two maps sharing a vertex set: piecewise linear with
// the same break points, so the vertex maximum is exact.
double vertex_distance(const SampledMap& f, const SampledMap& g) {
  double d = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) d = std::max(d, std::abs(f.values[i] - g.values[i]));
  return d;
}

template <typename Fn>
StabilityReport run_suite(const std::string& name, int trials, uint64_t seed, Fn&& one_trial) {
  StabilityReport rep;
  rep.check = name;
  rep.trials = trials;
  rep.seed = seed;
  rep.worst_slack = kInf;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + 1000003ULL * (uint64_t)t);
    double slack = one_trial(rng);
#pragma omp critical
    {
      rep.worst_slack = std::min(rep.worst_slack, slack);
      if (slack < -1e-9) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace

double check_distance_lemma(const SampledMap& f, const SampledMap& g, const TargetPoint& a) {
  double observed = 0.0, bound = 0.0;
  for (double x : union_breakpoints(f, g, a)) {
    observed = std::max(observed, std::abs(well_value_at(f, a, x) - well_value_at(g, a, x)));
    auto vf = eval(f, x), vg = eval(g, x);
    double d = 0.0;
    for (size_t k = 0; k < vf.size(); ++k) d += (vf[k] - vg[k]) * (vf[k] - vg[k]);
    bound = std::max(bound, std::sqrt(d));
  }
  return bound - observed;
}

double check_stability(const SampledMap& f, const SampledMap& g, const TargetPoint& a) {
  WellOptions opts;
  opts.jitter = true;
  double observed = match_diagrams(well_diagram(f, a, opts), well_diagram(g, a, opts)).bottleneck;
  return vertex_distance(f, g) - observed;
}

bool check_shrinking_wellness(const WellModule& mod) {
  for (size_t i = 0; i < mod.maps.size(); ++i) {
    std::vector<BitVector> imgs;
    for (const auto& b : mod.groups[i].well_basis.basis) imgs.push_back(mod.maps[i].apply(b));
    Subspace s = span_of(mod.groups[i + 1].homology_rank(), imgs);
    for (const auto& b : mod.groups[i + 1].well_basis.basis)
      if (!contains(s, b)) return false;
  }
  return true;
}

bool check_bridge(const SampledMap& f, const SampledMap& g, const TargetPoint& a, double radius) {
  WellOptions opts;
  opts.jitter = true;
  WellFunction wf = well_function(f, a, opts);

  double eps = 0.0;
  std::vector<double> wg(wf.mesh.vertex_count());
  for (int v = 0; v < wf.mesh.vertex_count(); ++v) {
    auto gv = eval(g, wf.mesh.px[v]);
    double d = 0.0, dist = 0.0;
    for (size_t k = 0; k < gv.size(); ++k) {
      double fv = wf.mesh.value(v, (int)k);
      d += (fv - gv[k]) * (fv - gv[k]);
      dist += (gv[k] - a.a[k]) * (gv[k] - a.a[k]);
    }
    eps = std::max(eps, std::sqrt(d));
    wg[v] = std::sqrt(dist);
  }

  auto comps_f = components_at(wf, radius + eps);
  std::vector<int> owner(wf.mesh.vertex_count(), -1);
  for (size_t c = 0; c < comps_f.size(); ++c)
    for (int v : comps_f[c].members) owner[v] = (int)c;

  WellFunction on_g = wf;
  on_g.vertex_values = wg;
  std::vector<char> received(comps_f.size(), 0);
  for (const auto& c : components_at(on_g, radius)) {
    int o = owner[c.members.front()];
    if (o >= 0) received[o] = 1;
  }

  for (size_t c = 0; c < comps_f.size(); ++c)
    if (comps_f[c].well && !received[c]) return false;
  return true;
}

StabilityReport distance_lemma_suite(int trials, uint64_t seed) {
  return run_suite("distance_lemma", trials, seed, [](std::mt19937_64& rng) {
    SampledMap f = random_instance(rng);
    std::uniform_real_distribution<double> scale(0.01, 0.5);
    SampledMap g = perturb(f, scale(rng), rng);
    return check_distance_lemma(f, g, TargetPoint{{0.0}});
  });
}

StabilityReport stability_suite(int trials, uint64_t seed) {
  return run_suite("diagram_stability", trials, seed, [](std::mt19937_64& rng) {
    SampledMap f = random_instance(rng);
    std::uniform_real_distribution<double> scale(0.01, 0.5);
    SampledMap g = perturb(f, scale(rng), rng);
    return check_stability(f, g, TargetPoint{{0.0}});
  });
}

StabilityReport shrinking_suite(int trials, uint64_t seed) {
  return run_suite("shrinking_wellness", trials, seed, [](std::mt19937_64& rng) {
    WellOptions opts;
    opts.jitter = true;
    opts.extension = (rng() % 2) == 0;
    WellFunction w = well_function(random_instance(rng), TargetPoint{{0.0}}, opts);

    // Containment across every consecutive pair of event intervals, not just
    // the terminal ones the module keeps.
    auto events = vertex_events(w);
    auto prev = well_group_at(w, events.empty() ? 1.0 : events[0] / 2);
    for (size_t i = 0; i + 1 <= events.size(); ++i) {
      double r = i + 1 < events.size() ? (events[i] + events[i + 1]) / 2 : events[i] + 1.0;
      auto next = well_group_at(w, r);
      BitMatrix m =
          inclusion_matrix(prev.components, next.components, w.mesh.vertex_count());
      std::vector<BitVector> imgs;
      for (const auto& b : prev.well_basis.basis) imgs.push_back(m.apply(b));
      Subspace s = span_of(next.homology_rank(), imgs);
      for (const auto& b : next.well_basis.basis)
        if (!contains(s, b)) return -1.0;
      prev = std::move(next);
    }
    return 0.0;
  });
}

StabilityReport bridge_suite(int trials, uint64_t seed) {
  return run_suite("bridge", trials, seed, [](std::mt19937_64& rng) {
    SampledMap f = random_instance(rng);
    std::uniform_real_distribution<double> scale(0.01, 0.3);
    double eps = scale(rng);
    SampledMap g = perturb(f, eps, rng);
    std::uniform_real_distribution<double> extra(0.0, 0.5);
    double radius = eps + extra(rng);
    return check_bridge(f, g, TargetPoint{{0.0}}, radius) ? 0.0 : -1.0;
  });
}

}  // namespace wellkit
