#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "wellkit/applications.hpp"
#include "wellkit/error.hpp"
#include "wellkit/persistence.hpp"

using namespace wellkit;

namespace {

SampledMap map1d(double lo, double hi, const std::vector<double>& vals) {
  std::vector<std::vector<double>> wrapped;
  for (double x : vals) wrapped.push_back({x});
  return build_map(Interval1D{lo, hi, (int)vals.size()}, wrapped, 1);
}

SampledMap constant_1d(double lo, double hi, int n, double c) {
  return map1d(lo, hi, std::vector<double>(n, c));
}

// Tent self-map of [0, 1] with slope 1.6, one flip fixed point and one
// genuine 2-cycle.
SampledMap tent() { return map1d(0.0, 1.0, {0.1, 0.9, 0.1}); }

double iterate(const SampledMap& b, double x, int steps) {
  const auto* dom = std::get_if<Interval1D>(&b.domain);
  for (int k = 0; k < steps; ++k)
    x = eval(b, std::min(dom->hi, std::max(dom->lo, x)))[0];
  return x;
}

}  // namespace

TEST_CASE("a constant self-map has one forever-robust fixed point") {
  auto res = fixed_point_robustness(constant_1d(-1.0, 1.0, 5, 0.3));
  REQUIRE(res.diagram.points.size() == 1);
  CHECK(std::isinf(res.diagram.points[0].value));
  CHECK(res.diagram.points[0].multiplicity == 1);
  CHECK(res.diagram.rank_at_zero == 1);
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].x == doctest::Approx(0.3));
  CHECK(std::isinf(res.points[0].robustness));
  CHECK(!res.self_map_violated);
}

TEST_CASE("a planar constant self-map behaves the same way") {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, 5, 5};
  // keep the constant off the value-space gridlines and diagonals
  std::vector<std::vector<double>> vals(25, {0.2, -0.35});
  auto res = fixed_point_robustness(build_map(dom, vals, 2));
  REQUIRE(res.diagram.points.size() == 1);
  CHECK(std::isinf(res.diagram.points[0].value));
  CHECK(res.diagram.points[0].multiplicity == 1);
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].x == doctest::Approx(0.2));
  CHECK(res.points[0].y == doctest::Approx(-0.35));
  CHECK(std::isinf(res.points[0].robustness));
}

TEST_CASE("halving map contracts to a forever-robust fixed point") {
  std::vector<double> vals;
  SampledMap probe = constant_1d(-1.0, 1.0, 4, 0.0);
  for (int v = 0; v < 4; ++v) vals.push_back(probe.px[v] / 2);
  auto res = fixed_point_robustness(map1d(-1.0, 1.0, vals));
  REQUIRE(res.diagram.points.size() == 1);
  CHECK(std::isinf(res.diagram.points[0].value));
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].x == doctest::Approx(0.0));
}

TEST_CASE("the identity self-map is degenerate") {
  std::vector<double> vals;
  SampledMap probe = constant_1d(0.0, 1.0, 5, 0.0);
  for (int v = 0; v < 5; ++v) vals.push_back(probe.px[v]);
  CHECK_THROWS_AS(fixed_point_robustness(map1d(0.0, 1.0, vals)), NonGenericError);
}

TEST_CASE("a translation is flagged as leaving the box yet keeps its extension fixed point") {
  std::vector<double> vals;
  SampledMap probe = constant_1d(0.0, 1.0, 4, 0.0);
  for (int v = 0; v < 4; ++v) vals.push_back(probe.px[v] + 0.5);
  auto res = fixed_point_robustness(map1d(0.0, 1.0, vals));
  CHECK(res.self_map_violated);
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].x == doctest::Approx(1.5));  // fixed point of the clamp
  CHECK(std::isinf(res.points[0].robustness));
}

TEST_CASE("exact 1-D composition agrees with pointwise iteration") {
  SampledMap b = tent();
  for (int j : {1, 2, 3}) {
    SampledMap c = composite_1d(b, j);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
      double q = x(rng);
      CHECK(eval(c, q)[0] == doctest::Approx(iterate(b, q, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("period one reduces to the fixed point solver") {
  auto fp = fixed_point_robustness(tent());
  auto orb = orbit_robustness(tent(), 1);
  REQUIRE(fp.diagram.points.size() == orb.diagram.points.size());
  for (size_t i = 0; i < fp.diagram.points.size(); ++i) {
    CHECK(fp.diagram.points[i].value == orb.diagram.points[i].value);
    CHECK(fp.diagram.points[i].multiplicity == orb.diagram.points[i].multiplicity);
  }
  REQUIRE(fp.points.size() == orb.points.size());
  for (size_t i = 0; i < fp.points.size(); ++i)
    CHECK(fp.points[i].x == orb.points[i].zero.x);
}

TEST_CASE("the tent map's 2-cycle shows up as fixed points of the composite") {
  auto orb = orbit_robustness(tent(), 2);
  REQUIRE(orb.points.size() == 3);  // flip fixed point plus the 2-cycle
  std::vector<double> xs;
  for (const auto& p : orb.points) xs.push_back(p.zero.x);
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == doctest::Approx(1.54 / 3.56));
  CHECK(xs[1] == doctest::Approx(1.7 / 2.6));
  CHECK(xs[2] == doctest::Approx(0.1 + 1.6 * 1.54 / 3.56));

  // Every composite fixed point closes up under forward iteration.
  for (const auto& p : orb.points)
    CHECK(std::abs(iterate(tent(), p.zero.x, 2) - p.zero.x) <= 1e-9);

  int mass = 0;
  for (const auto& q : orb.diagram.points) mass += q.multiplicity;
  CHECK(mass == 3);
  CHECK(orb.diagram.rank_at_zero == 3);
}

TEST_CASE("an involution's even composite is degenerate") {
  std::vector<double> vals;
  SampledMap probe = constant_1d(-1.0, 1.0, 4, 0.0);
  for (int v = 0; v < 4; ++v) vals.push_back(-probe.px[v]);
  SampledMap b = map1d(-1.0, 1.0, vals);
  CHECK_THROWS_AS(orbit_robustness(b, 2), NonGenericError);
}

TEST_CASE("sampled composite kills never beat the unrestricted robustness") {
  // A monotone self-map with a shallow fixed-point pair. Random draws kill
  // such a pair readily; killing an expanding 2-cycle like the tent's needs
  // a coordinated noise profile no reasonable sample count ever hits.
  SampledMap b = map1d(
      0.0, 1.0, {0.1, 0.1, 0.1, 0.32, 0.54, 0.5675, 0.595, 0.6225, 0.65});
  auto orb = orbit_robustness(b, 2, true, 12, 99);
  CHECK(orb.composite_mode);
  int finite = 0, killed = 0;
  for (const auto& p : orb.points) {
    if (std::isfinite(p.zero.robustness)) ++finite;
    if (std::isfinite(p.composite_draw_bound)) {
      ++killed;
      CHECK(p.composite_realized >= p.zero.robustness - 1e-9);
      CHECK(p.composite_draw_bound > 0.0);
    }
  }
  CHECK(finite == 2);
  CHECK(killed == 2);

  auto again = orbit_robustness(b, 2, true, 12, 99);
  for (size_t i = 0; i < orb.points.size(); ++i) {
    CHECK(orb.points[i].composite_draw_bound == again.points[i].composite_draw_bound);
    CHECK(orb.points[i].composite_realized == again.points[i].composite_realized);
  }
}

TEST_CASE("a planar linear orbit stays robust forever") {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, 4, 4};
  SampledMap probe = build_map(dom, std::vector<std::vector<double>>(16, {0.0, 0.0}), 2);
  // offsets keep the unique cycle point away from the mesh diagonals
  std::vector<std::vector<double>> vals;
  for (int v = 0; v < 16; ++v)
    vals.push_back({0.5 * probe.py[v] + 0.1, 0.3 * probe.px[v] - 0.05});
  SampledMap b = build_map(dom, vals, 2);

  auto orb = orbit_robustness(b, 2);
  REQUIRE(orb.points.size() == 1);
  CHECK(orb.points[0].zero.x == doctest::Approx(0.075 / 0.85));
  CHECK(orb.points[0].zero.y == doctest::Approx(-0.02 / 0.85));
  CHECK(std::isinf(orb.points[0].zero.robustness));
  REQUIRE(orb.diagram.points.size() == 1);
  CHECK(std::isinf(orb.diagram.points[0].value));
}

TEST_CASE("contour field of the identity map prices distance to the sampled boundary") {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, 5, 5};
  SampledMap probe = build_map(dom, std::vector<std::vector<double>>(25, {0.0, 0.0}), 2);
  std::vector<std::vector<double>> vals;
  for (int v = 0; v < 25; ++v) vals.push_back({probe.px[v], probe.py[v]});
  SampledMap f = build_map(dom, vals, 2);

  TriangulatedRect grid{-0.41, 0.43, -0.37, 0.39, 3, 3};
  ContourField field = contour_field(f, grid);
  REQUIRE(field.cells.size() == 9);
  for (const auto& cell : field.cells) {
    double expect = kInf;
    for (int v = 0; v < 25; ++v) {
      if (!probe.on_boundary[v]) continue;
      expect = std::min(expect, std::hypot(probe.px[v] - cell.ax, probe.py[v] - cell.ay));
    }
    CHECK(cell.value == doctest::Approx(expect).epsilon(1e-6));
    CHECK(cell.boundary_limited);
  }

  // Targets outside the image have empty preimages and zero robustness.
  ContourField far = contour_field(f, TriangulatedRect{3.0, 4.0, 3.0, 4.0, 2, 2});
  for (const auto& cell : far.cells) {
    CHECK(cell.value == 0.0);
    CHECK(!cell.boundary_limited);
  }
}

TEST_CASE("contour field is deterministic, serial-equal, and grid-refinement stable") {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, 5, 5};
  SampledMap probe = build_map(dom, std::vector<std::vector<double>>(25, {0.0, 0.0}), 2);
  std::vector<std::vector<double>> vals;
  for (int v = 0; v < 25; ++v)
    vals.push_back({probe.px[v] - 0.2 * probe.py[v], probe.py[v] + 0.1 * probe.px[v]});
  SampledMap f = build_map(dom, vals, 2);

  TriangulatedRect coarse{-0.4, 0.4, -0.4, 0.4, 3, 3};
  TriangulatedRect fine{-0.4, 0.4, -0.4, 0.4, 5, 5};
  ContourField c = contour_field(f, coarse);
  ContourField s = contour_field_serial(f, coarse);
  REQUIRE(c.cells.size() == s.cells.size());
  for (size_t i = 0; i < c.cells.size(); ++i) {
    CHECK(c.cells[i].value == s.cells[i].value);
    CHECK(c.cells[i].jittered == s.cells[i].jittered);
  }

  ContourField refined = contour_field(f, fine);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      const auto& a = c.cells[j * 3 + i];
      const auto& b = refined.cells[(2 * j) * 5 + 2 * i];
      CHECK(a.ax == b.ax);
      CHECK(a.ay == b.ay);
      CHECK(a.value == b.value);
    }
}
