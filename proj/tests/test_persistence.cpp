#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "wellkit/mesh.hpp"
#include "wellkit/persistence.hpp"

using namespace wellkit;

namespace {

SampledMap map1d(double lo, double hi, const std::vector<double>& vals) {
  std::vector<std::vector<double>> wrapped;
  for (double x : vals) wrapped.push_back({x});
  return build_map(Interval1D{lo, hi, (int)vals.size()}, wrapped, 1);
}

PersistenceDiagram diagram_of(const SampledMap& m, double a0) {
  TargetPoint a{{a0}};
  return reduce(sublevel_filtration(m, a));
}

bool has_pair(const PersistenceDiagram& d, int dim, double birth, double death) {
  for (const auto& p : d.pairs)
    if (p.dim == dim && p.birth == birth && p.death == death) return true;
  return false;
}

int count_pairs(const PersistenceDiagram& d, int dim, double birth, double death) {
  int n = 0;
  for (const auto& p : d.pairs)
    if (p.dim == dim && p.birth == birth && p.death == death) ++n;
  return n;
}

}  // namespace

TEST_CASE("nested zero pattern produces the staircase diagram") {
  // Crossing structure with dips at heights 1, 2, 3 between four zeros.
  SampledMap m = map1d(0.0, 4.0, {-4.0, 3.0, -2.0, 1.0, -4.0});
  m = refine_at_crossings(m, TargetPoint{{0.0}});
  REQUIRE(m.vertex_count() == 9);

  PersistenceDiagram d = diagram_of(m, 0.0);
  // Four components appear at 0; merges happen at the inner local maxima 1, 2, 3.
  CHECK(count_pairs(d, 0, 0.0, 1.0) == 1);
  CHECK(count_pairs(d, 0, 0.0, 2.0) == 1);
  CHECK(count_pairs(d, 0, 0.0, 3.0) == 1);
  CHECK(count_pairs(d, 0, 0.0, kInf) == 1);
  // Each merge vertex and each endpoint enters together with its edges.
  CHECK(count_pairs(d, 0, 1.0, 1.0) == 1);
  CHECK(count_pairs(d, 0, 2.0, 2.0) == 1);
  CHECK(count_pairs(d, 0, 3.0, 3.0) == 1);
  CHECK(count_pairs(d, 0, 4.0, 4.0) == 2);
  CHECK(d.pairs.size() == 9);
  for (const auto& p : d.pairs) CHECK(p.dim == 0);

  auto cv = critical_values(d);
  CHECK(cv == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("single edge with no zero") {
  SampledMap m = map1d(0.0, 1.0, {-1.0, 1.0});
  PersistenceDiagram d = diagram_of(m, 0.0);
  CHECK(d.pairs.size() == 2);
  CHECK(has_pair(d, 0, 1.0, 1.0));
  CHECK(has_pair(d, 0, 1.0, kInf));
  CHECK(critical_values(d) == std::vector<double>{1.0});
}

TEST_CASE("reduction is invariant under tie order") {
  // Two vertices and the edge between them, all at value 0, in both vertex orders.
  Filtration f1, f2;
  f1.cells = {{0, 0.0, {}}, {0, 0.0, {}}, {1, 0.0, {0, 1}}};
  f2.cells = {{0, 0.0, {}}, {0, 0.0, {}}, {1, 0.0, {1, 0}}};
  std::sort(f2.cells[2].boundary.begin(), f2.cells[2].boundary.end());
  PersistenceDiagram d1 = reduce(f1), d2 = reduce(f2);
  REQUIRE(d1.pairs.size() == 2);
  CHECK(has_pair(d1, 0, 0.0, 0.0));
  CHECK(has_pair(d1, 0, 0.0, kInf));
  CHECK(d1.pairs.size() == d2.pairs.size());
  for (size_t i = 0; i < d1.pairs.size(); ++i) {
    CHECK(d1.pairs[i].dim == d2.pairs[i].dim);
    CHECK(d1.pairs[i].birth == d2.pairs[i].birth);
    CHECK(d1.pairs[i].death == d2.pairs[i].death);
  }
}

TEST_CASE("validate rejects malformed filtrations") {
  Filtration bad_order;
  bad_order.cells = {{0, 1.0, {}}, {0, 0.0, {}}};
  CHECK_THROWS_AS(validate(bad_order), std::invalid_argument);

  Filtration bad_arity;
  bad_arity.cells = {{0, 0.0, {}}, {1, 0.0, {0}}};
  CHECK_THROWS_AS(validate(bad_arity), std::invalid_argument);

  Filtration late_face;
  late_face.cells = {{0, 0.0, {}}, {1, 0.0, {0, 2}}, {0, 0.0, {}}};
  CHECK_THROWS_AS(validate(late_face), std::invalid_argument);
}

TEST_CASE("planar sublevel complex reduces consistently") {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, 4, 4};
  SampledMap probe = build_map(dom, std::vector<std::vector<double>>(16, {0.0, 0.0}), 2);
  std::vector<std::vector<double>> vals;
  for (int v = 0; v < probe.vertex_count(); ++v) vals.push_back({probe.px[v], probe.py[v]});
  SampledMap m = build_map(dom, vals, 2);
  Filtration f = sublevel_filtration(m, TargetPoint{{0.25, 0.1}});
  validate(f);
  PersistenceDiagram d = reduce(f);

  int essential = 0, finite = 0;
  for (const auto& p : d.pairs) {
    CHECK(p.birth <= p.death);
    if (std::isfinite(p.death)) ++finite;
    else {
      ++essential;
      CHECK(p.dim == 0);  // the square is contractible
    }
  }
  CHECK(essential == 1);
  CHECK(2 * finite + essential == (int)f.cells.size());
}

TEST_CASE("bottleneck on tiny diagrams") {
  PersistenceDiagram a, b, empty;
  a.pairs = {{0, 0.0, 3.0}};
  CHECK(bottleneck_small(a, empty) == doctest::Approx(1.5));
  CHECK(bottleneck_small(empty, a) == doctest::Approx(1.5));

  b.pairs = {{0, 0.0, 4.0}};
  CHECK(bottleneck_small(a, b) == doctest::Approx(1.0));

  PersistenceDiagram c;
  c.pairs = {{0, 0.0, 3.0}, {0, 0.0, 0.0}};
  CHECK(bottleneck_small(a, c) == doctest::Approx(0.0));  // diagonal points ignored

  PersistenceDiagram e1, e2;
  e1.pairs = {{0, 0.0, kInf}};
  e2.pairs = {{0, 0.5, kInf}};
  CHECK(bottleneck_small(e1, e2) == doctest::Approx(0.5));
  CHECK(std::isinf(bottleneck_small(e1, empty)));

  PersistenceDiagram dim0, dim1;
  dim0.pairs = {{0, 0.0, 1.0}};
  dim1.pairs = {{1, 0.0, 1.0}};
  CHECK(bottleneck_small(dim0, dim1) == doctest::Approx(0.5));

  PersistenceDiagram big;
  for (int i = 0; i < 13; ++i) big.pairs.push_back({0, 0.0, 1.0 + i});
  CHECK_THROWS_AS(bottleneck_small(big, empty), SizeLimitError);
}

TEST_CASE("bottleneck respects the sup norm bound on random pairs") {
  std::mt19937_64 rng(414243);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<int> size(3, 6);
  int trials = 500;
  for (int t = 0; t < trials; ++t) {
    int n = size(rng);
    std::vector<double> fv(n), gv(n);
    for (int i = 0; i < n; ++i) {
      fv[i] = val(rng);
      gv[i] = val(rng);
    }
    SampledMap f = map1d(0.0, 1.0, fv);
    SampledMap g = map1d(0.0, 1.0, gv);
    PersistenceDiagram df = diagram_of(f, 0.0);
    PersistenceDiagram dg = diagram_of(g, 0.0);

    // sup |w_f - w_g| over all breakpoints of either distance function:
    // mesh vertices plus zero crossings of either map.
    double sup = 0.0;
    for (int i = 0; i < n; ++i)
      sup = std::max(sup, std::abs(std::abs(fv[i]) - std::abs(gv[i])));
    auto crossings = [&](const std::vector<double>& v, const SampledMap& other) {
      for (int i = 0; i + 1 < (int)v.size(); ++i) {
        if ((v[i] > 0) == (v[i + 1] > 0)) continue;
        double t0 = v[i] / (v[i] - v[i + 1]);
        double x = f.px[i] + t0 * (f.px[i + 1] - f.px[i]);
        sup = std::max(sup, std::abs(eval(other, x)[0]));
      }
    };
    crossings(fv, g);
    crossings(gv, f);

    double dist = bottleneck_small(df, dg);
    CHECK(dist <= sup + 1e-9);
  }
}
