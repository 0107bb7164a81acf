#include "wellkit/applications.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wellkit/error.hpp"
#include "wellkit/persistence.hpp"

namespace wellkit {

namespace {

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

Box box_of(const SampledMap& b) {
  if (b.domain_dim() == 1) {
    const auto& d = std::get<Interval1D>(b.domain);
    return {d.lo, d.hi, 0.0, 0.0};
  }
  const auto& d = std::get<TriangulatedRect>(b.domain);
  return {d.x_lo, d.x_hi, d.y_lo, d.y_hi};
}

bool leaves_box(const SampledMap& b) {
  Box box = box_of(b);
  for (int v = 0; v < b.vertex_count(); ++v) {
    if (b.value(v, 0) < box.x_lo || b.value(v, 0) > box.x_hi) return true;
    if (b.codomain_dim == 2 && (b.value(v, 1) < box.y_lo || b.value(v, 1) > box.y_hi))
      return true;
  }
  return false;
}

// f(x) = x - b(x) on b's own mesh.
SampledMap displacement(const SampledMap& b) {
  SampledMap f = b;
  for (int v = 0; v < b.vertex_count(); ++v) {
    f.value(v, 0) = b.px[v] - b.value(v, 0);
    if (b.codomain_dim == 2) f.value(v, 1) = b.py[v] - b.value(v, 1);
  }
  return f;
}

FixedPointResult solve_displacement(const SampledMap& f, bool violated, bool jitter) {
  WellOptions opts;
  opts.extension = true;
  opts.jitter = jitter;
  TargetPoint zero{std::vector<double>(f.codomain_dim, 0.0)};
  WellFunction w = well_function(f, zero, opts);
  FixedPointResult res;
  res.diagram = well_diagram(build_well_module(w));
  res.points = robustness(w);
  res.self_map_violated = violated;
  return res;
}

double clamp1(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// 2-D composites are resampled on a refined grid; exact composition is a 1-D
// luxury of piecewise linearity.
SampledMap resample_composite_2d(const SampledMap& b, int period) {
  const auto& d = std::get<TriangulatedRect>(b.domain);
  int factor = 4 * period;
  TriangulatedRect fine{d.x_lo, d.x_hi, d.y_lo,          d.y_hi,
                        (d.nx - 1) * factor + 1,          (d.ny - 1) * factor + 1};
  SampledMap probe =
      build_map(fine, std::vector<std::vector<double>>((size_t)fine.nx * fine.ny, {0.0, 0.0}), 2);
  std::vector<std::vector<double>> vals(probe.vertex_count());
  for (int v = 0; v < probe.vertex_count(); ++v) {
    double x = probe.px[v], y = probe.py[v];
    for (int k = 0; k < period; ++k) {
      auto img = eval(b, clamp1(x, d.x_lo, d.x_hi), clamp1(y, d.y_lo, d.y_hi));
      x = img[0];
      y = img[1];
    }
    vals[v] = {x, y};
  }
  return build_map(fine, vals, 2);
}

double eval1(const SampledMap& m, double x) { return eval(m, x)[0]; }

}  // namespace

SampledMap composite_1d(const SampledMap& b, int period) {
  const auto& dom = std::get<Interval1D>(b.domain);
  std::vector<double> xs = b.px, ys(b.values);

  for (int it = 1; it < period; ++it) {
    // Thresholds where clamp(current) crosses a kink of b.
    std::vector<double> thresholds = b.px;
    thresholds.push_back(dom.lo);
    thresholds.push_back(dom.hi);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<double> nx, ny;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      nx.push_back(xs[i]);
      ny.push_back(ys[i]);
      double y0 = ys[i], y1 = ys[i + 1];
      if (y0 != y1) {
        double lo = std::min(y0, y1), hi = std::max(y0, y1);
        for (double t : thresholds) {
          if (t <= lo || t >= hi) continue;
          double x = xs[i] + (t - y0) / (y1 - y0) * (xs[i + 1] - xs[i]);
          nx.push_back(x);
          ny.push_back(t);
        }
      }
    }
    nx.push_back(xs.back());
    ny.push_back(ys.back());

    // Inserted crossings of one piece arrive threshold-ordered; re-sort the
    // piece-local runs by position.
    std::vector<size_t> idx(nx.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t p, size_t q) { return nx[p] < nx[q]; });
    xs.clear();
    ys.clear();
    for (size_t i : idx) {
      if (!xs.empty() && nx[i] == xs.back()) continue;
      xs.push_back(nx[i]);
      ys.push_back(ny[i]);
    }
    if (xs.size() > 200000) throw SizeLimitError("composite breakpoints past 2 * 10^5");

    for (size_t i = 0; i < xs.size(); ++i)
      ys[i] = eval1(b, clamp1(ys[i], dom.lo, dom.hi));
  }

  SampledMap out;
  out.domain = Interval1D{dom.lo, dom.hi, (int)xs.size()};
  out.codomain_dim = 1;
  out.px = xs;
  out.values = ys;
  out.py.assign(xs.size(), 0.0);
  for (size_t i = 0; i + 1 < xs.size(); ++i) out.edges.push_back({(int)i, (int)i + 1});
  out.on_boundary.assign(xs.size(), 0);
  out.on_boundary.front() = 1;
  out.on_boundary.back() = 1;
  out.zero_sign.assign(xs.size(), 0);
  return out;
}

FixedPointResult fixed_point_robustness(const SampledMap& b) {
  return solve_displacement(displacement(b), leaves_box(b), false);
}

namespace {

// Continuous extent of the component owning the given zero in the sublevel
// set at radius eps, including the slope-one extension past the mesh ends.
std::array<double, 2> component_extent(const WellFunction& w, int zero_vertex, double eps) {
  for (const auto& c : components_at(w, eps)) {
    if (!std::binary_search(c.members.begin(), c.members.end(), zero_vertex)) continue;
    int lm = c.members.front(), rm = c.members.back();
    double left, right;
    if (lm > 0) {
      double wl = w.vertex_values[lm], wo = w.vertex_values[lm - 1];
      left = w.mesh.px[lm] - (eps - wl) / (wo - wl) * (w.mesh.px[lm] - w.mesh.px[lm - 1]);
    } else {
      left = w.mesh.px[lm] - (eps - w.vertex_values[lm]);
    }
    int n = w.mesh.vertex_count();
    if (rm < n - 1) {
      double wr = w.vertex_values[rm], wo = w.vertex_values[rm + 1];
      right = w.mesh.px[rm] + (eps - wr) / (wo - wr) * (w.mesh.px[rm + 1] - w.mesh.px[rm]);
    } else {
      right = w.mesh.px[rm] + (eps - w.vertex_values[rm]);
    }
    return {left, right};
  }
  return {0.0, 0.0};
}

// Does x - g(clamp(x)) vanish anywhere on [lo, hi]? Checked exactly at the
// kinks of g plus the interval ends.
bool has_fixed_point_on(const SampledMap& g, double lo, double hi) {
  const auto& dom = std::get<Interval1D>(g.domain);
  std::vector<double> xs = {lo, hi, dom.lo, dom.hi};
  for (double x : g.px) xs.push_back(x);
  xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return x < lo || x > hi; }),
           xs.end());
  std::sort(xs.begin(), xs.end());
  double prev = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double v = xs[i] - eval1(g, clamp1(xs[i], dom.lo, dom.hi));
    if (v == 0.0) return true;
    if (i > 0 && (v > 0) != (prev > 0)) return true;
    prev = v;
  }
  return false;
}

double sup_distance_1d(const SampledMap& f, const SampledMap& g) {
  std::vector<double> xs = f.px;
  xs.insert(xs.end(), g.px.begin(), g.px.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double d = 0.0;
  for (double x : xs) d = std::max(d, std::abs(eval1(f, x) - eval1(g, x)));
  return d;
}

}  // namespace

OrbitResult orbit_robustness(const SampledMap& b, int period, bool composite_sampled, int samples,
                             uint64_t seed, bool jitter) {
  if (period < 1) throw std::invalid_argument("period must be at least 1");
  if (composite_sampled && samples < 1)
    throw std::invalid_argument("composite sampling needs samples >= 1");
  if (composite_sampled && b.domain_dim() != 1)
    throw std::invalid_argument("composite sampling is 1-D only");

  SampledMap composite = period == 1 ? b
                         : b.domain_dim() == 1 ? composite_1d(b, period)
                                               : resample_composite_2d(b, period);
  SampledMap f = displacement(composite);

  WellOptions opts;
  opts.extension = true;
  opts.jitter = jitter;
  TargetPoint zero{std::vector<double>(f.codomain_dim, 0.0)};
  WellFunction w = well_function(f, zero, opts);

  OrbitResult res;
  res.period = period;
  res.self_map_violated = leaves_box(b);
  res.diagram = well_diagram(build_well_module(w));
  for (const auto& p : robustness(w)) res.points.push_back({p, kInf, kInf});
  res.composite_mode = composite_sampled;
  if (!composite_sampled || res.points.empty()) return res;

  const auto& dom = std::get<Interval1D>(b.domain);
  double range = value_range(b);
  double r_lo = std::max(1e-3 * range, 1e-9);
  double r_hi = std::max(range, 2 * r_lo);
  double ratio = std::pow(r_hi / r_lo, 1.0 / 19.0);

  for (int step = 0; step < 20; ++step) {
    double r = r_lo * std::pow(ratio, step);
    bool all_bounded = true;
    for (const auto& p : res.points) all_bounded &= std::isfinite(p.composite_draw_bound);
    if (all_bounded) break;

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < samples; ++s) {
      std::mt19937_64 rng(seed + 1315423911ULL * (uint64_t)step + (uint64_t)s);
      std::uniform_real_distribution<double> noise(-r, r);
      SampledMap h = b;
      for (double& v : h.values) v += noise(rng);
      SampledMap hj = period == 1 ? h : composite_1d(h, period);
      double realized = sup_distance_1d(composite, hj);

      for (size_t i = 0; i < res.points.size(); ++i) {
        // Judge the kill on the component at the realized composite
        // distance: a smaller perturbation of the composite must keep a
        // fixed point inside that component.
        auto extent = component_extent(w, res.points[i].zero.vertex, realized);
        if (has_fixed_point_on(hj, extent[0], extent[1])) continue;
#pragma omp critical
        {
          if (r < res.points[i].composite_draw_bound ||
              (r == res.points[i].composite_draw_bound &&
               realized < res.points[i].composite_realized)) {
            res.points[i].composite_draw_bound = r;
            res.points[i].composite_realized = realized;
          }
        }
      }
    }
  }
  return res;
}

namespace {

ContourField contour_common(const SampledMap& f, const TriangulatedRect& a_grid, bool parallel) {
  if (f.domain_dim() != 2 || f.codomain_dim != 2)
    throw std::invalid_argument("contour fields need a planar map with planar values");
  ContourField field;
  field.grid = a_grid;
  field.cells.assign((size_t)a_grid.nx * a_grid.ny, {});

  auto one = [&](int idx) {
    int i = idx % a_grid.nx, j = idx / a_grid.nx;
    ContourCell cell;
    cell.ax = a_grid.x_lo + (a_grid.x_hi - a_grid.x_lo) * i / (a_grid.nx - 1);
    cell.ay = a_grid.y_lo + (a_grid.y_hi - a_grid.y_lo) * j / (a_grid.ny - 1);
    TargetPoint a{{cell.ax, cell.ay}};
    cell.jittered = !non_generic_vertices(f, a).empty();
    WellOptions opts;
    opts.jitter = true;
    WellDiagram d = well_diagram(f, a, opts);
    if (!d.points.empty()) {
      cell.value = d.points.back().value;
      cell.boundary_limited = d.points.back().boundary_limited;
    }
    field.cells[idx] = cell;
  };

  int total = (int)field.cells.size();
  if (parallel) {
    std::exception_ptr err;  // exceptions must not unwind out of the omp region
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
      try {
        one(idx);
      } catch (...) {
#pragma omp critical(contour_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int idx = 0; idx < total; ++idx) one(idx);
  }
  return field;
}

}  // namespace

ContourField contour_field(const SampledMap& f, const TriangulatedRect& a_grid) {
  return contour_common(f, a_grid, true);
}

ContourField contour_field_serial(const SampledMap& f, const TriangulatedRect& a_grid) {
  return contour_common(f, a_grid, false);
}

}  // namespace wellkit
