#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "wellkit/mesh.hpp"

using namespace wellkit;

namespace {

std::vector<std::vector<double>> wrap1(const std::vector<double>& v) {
  std::vector<std::vector<double>> out;
  for (double x : v) out.push_back({x});
  return out;
}

SampledMap map1d(double lo, double hi, const std::vector<double>& vals) {
  return build_map(Interval1D{lo, hi, (int)vals.size()}, wrap1(vals), 1);
}

}  // namespace

TEST_CASE("build_map validates input") {
  CHECK_THROWS_AS((void)map1d(0, 1, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)build_map(Interval1D{0, 1, 3}, wrap1({1, 2}), 1), std::invalid_argument);
  CHECK_THROWS_AS((void)build_map(Interval1D{1, 0, 2}, wrap1({1, 2}), 1), std::invalid_argument);
  CHECK_THROWS_AS((void)map1d(0, 1, {1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS((void)build_map(TriangulatedRect{0, 1, 0, 1, 1, 3}, {}, 2),
                  std::invalid_argument);
}

TEST_CASE("1-D eval interpolates and hits vertices exactly") {
  SampledMap m = map1d(0, 2, {0, 2, 0});
  CHECK(eval(m, 1.5)[0] == doctest::Approx(1.0));
  CHECK(eval(m, 1.0)[0] == 2.0);
  CHECK(eval(m, 0.0)[0] == 0.0);
  CHECK(eval(m, 2.0)[0] == 0.0);
  CHECK_THROWS_AS((void)eval(m, 2.5), std::invalid_argument);
  CHECK_THROWS_AS((void)eval(m, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("2-D eval is linear on both triangles of a cell") {
  // f(x, y) = (x + 2y, 3x - y) sampled on a grid is reproduced exactly
  TriangulatedRect dom{0, 1, 0, 1, 4, 3};
  std::vector<std::vector<double>> vals;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      double x = i / 3.0, y = j / 2.0;
      vals.push_back({x + 2 * y, 3 * x - y});
    }
  SampledMap m = build_map(dom, vals, 2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 200; ++k) {
    double x = unit(rng), y = unit(rng);
    auto v = eval(m, x, y);
    CHECK(v[0] == doctest::Approx(x + 2 * y).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(3 * x - y).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)eval(m, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("grid connectivity counts") {
  TriangulatedRect dom{0, 1, 0, 1, 3, 3};
  std::vector<std::vector<double>> vals(9, std::vector<double>{1.0, 1.0});
  SampledMap m = build_map(dom, vals, 2);
  CHECK(m.vertex_count() == 9);
  // edges: 6 horizontal + 6 vertical + 4 diagonal
  CHECK(m.edges.size() == 16);
  CHECK(m.tris.size() == 8);
  int boundary = 0;
  for (auto b : m.on_boundary) boundary += b;
  CHECK(boundary == 8);
}

TEST_CASE("refine_at_crossings inserts exact target vertices") {
  SampledMap m = map1d(0, 2, {-1, 1, -1});
  SampledMap r = refine_at_crossings(m, {{0.0}});
  REQUIRE(r.vertex_count() == 5);
  CHECK(r.px[1] == doctest::Approx(0.5));
  CHECK(r.px[3] == doctest::Approx(1.5));
  CHECK(r.value(1, 0) == 0.0);
  CHECK(r.zero_sign[1] == 1);
  CHECK(r.zero_sign[3] == -1);
  // the map is unchanged as a function
  for (double x : {0.1, 0.5, 0.77, 1.3, 1.9}) CHECK(eval(r, x)[0] == doctest::Approx(eval(m, x)[0]));
}

TEST_CASE("refinement example with asymmetric crossing") {
  SampledMap m = map1d(0, 1, {-4, 3});
  SampledMap r = refine_at_crossings(m, {{0.0}});
  REQUIRE(r.vertex_count() == 3);
  CHECK(r.px[1] == doctest::Approx(4.0 / 7.0));
}

TEST_CASE("refine rejects a vertex sitting on the target") {
  SampledMap m = map1d(0, 2, {-1, 0, 1});
  CHECK_THROWS_AS((void)refine_at_crossings(m, {{0.0}}), NonGenericError);
  SampledMap j = apply_jitter(m, {{0.0}});
  CHECK(non_generic_vertices(j, {{0.0}}).empty());
  SampledMap r = refine_at_crossings(j, {{0.0}});
  CHECK(r.vertex_count() >= 3);
}

TEST_CASE("jitter is deterministic and scales with the value range") {
  SampledMap m = map1d(0, 2, {-1, 0, 1});
  SampledMap j1 = apply_jitter(m, {{0.0}});
  SampledMap j2 = apply_jitter(m, {{0.0}});
  CHECK(j1.values == j2.values);
  CHECK(std::abs(j1.value(1, 0)) == doctest::Approx(2e-9));
  // untouched vertices stay put
  CHECK(j1.value(0, 0) == -1.0);
  CHECK(j1.value(2, 0) == 1.0);
}

TEST_CASE("constant map equal to the target is degenerate even with jitter") {
  SampledMap m = map1d(0, 1, {0, 0, 0});
  CHECK_THROWS_AS((void)apply_jitter(m, {{0.0}}), NonGenericError);
  // constant away from the target is fine
  SampledMap c = map1d(0, 1, {2, 2, 2});
  CHECK(non_generic_vertices(c, {{0.0}}).empty());
}

TEST_CASE("insert_zero_vertices finds the preimage of a linear map") {
  // identity map on [-1,1]^2; target strictly inside one triangle
  TriangulatedRect dom{-1, 1, -1, 1, 5, 5};
  std::vector<std::vector<double>> vals;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) vals.push_back({-1 + i * 0.5, -1 + j * 0.5});
  SampledMap m = build_map(dom, vals, 2);
  TargetPoint a{{0.17, 0.29}};
  SampledMap z = insert_zero_vertices(m, a);
  REQUIRE(z.vertex_count() == 26);
  int zi = 25;
  CHECK(z.zero_sign[zi] == 1);
  CHECK(z.px[zi] == doctest::Approx(0.17));
  CHECK(z.py[zi] == doctest::Approx(0.29));
  CHECK(z.value(zi, 0) == 0.17);
  CHECK(z.value(zi, 1) == 0.29);
  CHECK(z.tris.size() == m.tris.size() + 2);
  CHECK(z.edges.size() == m.edges.size() + 3);
}

TEST_CASE("orientation reversing map gets zero sign -1") {
  TriangulatedRect dom{-1, 1, -1, 1, 3, 3};
  std::vector<std::vector<double>> vals;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      double x = -1 + i * 1.0, y = -1 + j * 1.0;
      vals.push_back({y, x});  // reflection
    }
  SampledMap m = build_map(dom, vals, 2);
  SampledMap z = insert_zero_vertices(m, {{0.21, 0.13}});
  int zeros = 0;
  int sign_total = 0;
  for (auto s : z.zero_sign)
    if (s != 0) {
      ++zeros;
      sign_total += s;
    }
  CHECK(zeros == 1);
  CHECK(sign_total == -1);
}

TEST_CASE("winding number of sampled circle maps") {
  auto loop_of = [](int turns, int n) {
    std::vector<std::array<double, 2>> loop;
    for (int k = 0; k < n; ++k) {
      double th = 2 * M_PI * k / n;
      loop.push_back({std::cos(turns * th), std::sin(turns * th)});
    }
    return loop;
  };
  CHECK(winding_number(loop_of(1, 97), {0, 0}) == 1);
  CHECK(winding_number(loop_of(2, 1000), {0, 0}) == 2);
  CHECK(winding_number(loop_of(-3, 501), {0, 0}) == -3);
  CHECK(winding_number(loop_of(1, 64), {3.0, 0.0}) == 0);
  std::vector<std::array<double, 2>> through = {{1, -1}, {1, 1}, {-1, 1}, {0.5, -1}};
  CHECK(winding_number(through, {0, 0}) == 1);
}

TEST_CASE("winding number rejects loops through the target") {
  std::vector<std::array<double, 2>> loop = {{-1, -1}, {1, 1}, {-1, 1}};
  CHECK_THROWS_AS((void)winding_number(loop, {0, 0}), NonGenericError);
}

TEST_CASE("well_value is the distance to the target") {
  SampledMap m = map1d(0, 1, {3, -4});
  CHECK(m.well_value(0, {{1.0}}) == 2.0);
  TriangulatedRect dom{0, 1, 0, 1, 2, 2};
  SampledMap g = build_map(dom, {{0, 0}, {3, 4}, {1, 1}, {2, 2}}, 2);
  CHECK(g.well_value(1, {{0.0, 0.0}}) == 5.0);
}

TEST_CASE("random refinement keeps the map and counts crossings") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + (int)(rng() % 13);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(val(rng));
    SampledMap m = map1d(0, 1, vals);
    int sign_changes = 0;
    for (int i = 0; i + 1 < n; ++i)
      if ((vals[i] < 0) != (vals[i + 1] < 0)) ++sign_changes;
    SampledMap r = refine_at_crossings(m, {{0.0}});
    CHECK(r.vertex_count() == n + sign_changes);
    int zeros = 0;
    for (auto s : r.zero_sign) zeros += s != 0;
    CHECK(zeros == sign_changes);
    std::uniform_real_distribution<double> pos(0, 1);
    for (int k = 0; k < 10; ++k) {
      double x = pos(rng);
      CHECK(std::abs(eval(r, x)[0] - eval(m, x)[0]) <= 1e-12);
    }
  }
}
