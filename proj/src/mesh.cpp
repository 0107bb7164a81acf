#include "wellkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

namespace wellkit {

namespace {

constexpr int kMaxVertices = 2'000'000;

void check_values(const std::vector<std::vector<double>>& vals, int n_expected, int codomain_dim) {
  if (codomain_dim != 1 && codomain_dim != 2)
    throw std::invalid_argument("codomain_dim must be 1 or 2");
  if ((int)vals.size() != n_expected) throw std::invalid_argument("vertex value count mismatch");
  for (const auto& v : vals) {
    if ((int)v.size() != codomain_dim)
      throw std::invalid_argument("vertex value arity mismatch");
    for (double x : v)
      if (!std::isfinite(x)) throw std::invalid_argument("non-finite vertex value");
  }
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace

double SampledMap::well_value(int v, const TargetPoint& a) const {
  if ((int)a.a.size() != codomain_dim) throw std::invalid_argument("target arity mismatch");
  if (codomain_dim == 1) return std::abs(value(v, 0) - a.a[0]);
  double dx = value(v, 0) - a.a[0];
  double dy = value(v, 1) - a.a[1];
  return std::sqrt(dx * dx + dy * dy);
}

SampledMap build_map(const Interval1D& dom, const std::vector<std::vector<double>>& vertex_values,
                     int codomain_dim) {
  if (dom.n < 2) throw std::invalid_argument("Interval1D needs n >= 2");
  if (!(dom.lo < dom.hi)) throw std::invalid_argument("Interval1D needs lo < hi");
  if (dom.n > kMaxVertices) throw SizeLimitError("interval mesh too large");
  check_values(vertex_values, dom.n, codomain_dim);
  SampledMap m;
  m.domain = dom;
  m.codomain_dim = codomain_dim;
  m.px.resize(dom.n);
  for (int i = 0; i < dom.n; ++i)
    m.px[i] = dom.lo + (dom.hi - dom.lo) * ((double)i / (dom.n - 1));
  m.px.back() = dom.hi;
  m.values.reserve((size_t)dom.n * codomain_dim);
  for (const auto& v : vertex_values)
    for (double x : v) m.values.push_back(x);
  for (int i = 0; i + 1 < dom.n; ++i) m.edges.push_back({i, i + 1});
  m.on_boundary.assign(dom.n, 0);
  m.on_boundary.front() = 1;
  m.on_boundary.back() = 1;
  m.zero_sign.assign(dom.n, 0);
  return m;
}

SampledMap build_map(const TriangulatedRect& dom,
                     const std::vector<std::vector<double>>& vertex_values, int codomain_dim) {
  if (dom.nx < 2 || dom.ny < 2) throw std::invalid_argument("TriangulatedRect needs nx, ny >= 2");
  if (!(dom.x_lo < dom.x_hi) || !(dom.y_lo < dom.y_hi))
    throw std::invalid_argument("TriangulatedRect needs positive extent");
  if ((long long)dom.nx * dom.ny > kMaxVertices) throw SizeLimitError("grid mesh too large");
  check_values(vertex_values, dom.nx * dom.ny, codomain_dim);
  SampledMap m;
  m.domain = dom;
  m.codomain_dim = codomain_dim;
  int nx = dom.nx, ny = dom.ny;
  m.px.resize((size_t)nx * ny);
  m.py.resize((size_t)nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int v = j * nx + i;
      m.px[v] = dom.x_lo + (dom.x_hi - dom.x_lo) * ((double)i / (nx - 1));
      m.py[v] = dom.y_lo + (dom.y_hi - dom.y_lo) * ((double)j / (ny - 1));
    }
  m.values.reserve((size_t)nx * ny * codomain_dim);
  for (const auto& v : vertex_values)
    for (double x : v) m.values.push_back(x);
  auto id = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) m.edges.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < ny) m.edges.push_back({id(i, j), id(i, j + 1)});
      if (i + 1 < nx && j + 1 < ny) {
        m.edges.push_back({id(i, j), id(i + 1, j + 1)});
        m.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        m.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  m.on_boundary.assign((size_t)nx * ny, 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) m.on_boundary[id(i, j)] = 1;
  m.zero_sign.assign((size_t)nx * ny, 0);
  return m;
}

std::vector<double> eval(const SampledMap& map, double x) {
  if (map.domain_dim() != 1) throw std::invalid_argument("eval(x): domain is 2-D");
  const auto& dom = std::get<Interval1D>(map.domain);
  if (x < dom.lo || x > dom.hi) throw std::invalid_argument("eval: point outside domain");
  // px is sorted; refinement may have made it non-uniform
  auto it = std::upper_bound(map.px.begin(), map.px.end(), x);
  int hi = std::min<int>((int)(it - map.px.begin()), map.vertex_count() - 1);
  int lo = std::max(hi - 1, 0);
  std::vector<double> out(map.codomain_dim);
  if (lo == hi || map.px[hi] == map.px[lo]) {
    for (int k = 0; k < map.codomain_dim; ++k) out[k] = map.value(lo, k);
    return out;
  }
  double t = (x - map.px[lo]) / (map.px[hi] - map.px[lo]);
  for (int k = 0; k < map.codomain_dim; ++k)
    out[k] = map.value(lo, k) + t * (map.value(hi, k) - map.value(lo, k));
  return out;
}

std::vector<double> eval(const SampledMap& map, double x, double y) {
  if (map.domain_dim() != 2) throw std::invalid_argument("eval(x, y): domain is 1-D");
  const auto& dom = std::get<TriangulatedRect>(map.domain);
  if (x < dom.x_lo || x > dom.x_hi || y < dom.y_lo || y > dom.y_hi)
    throw std::invalid_argument("eval: point outside domain");
  double dx = (dom.x_hi - dom.x_lo) / (dom.nx - 1);
  double dy = (dom.y_hi - dom.y_lo) / (dom.ny - 1);
  int i = std::min((int)((x - dom.x_lo) / dx), dom.nx - 2);
  int j = std::min((int)((y - dom.y_lo) / dy), dom.ny - 2);
  double u = (x - (dom.x_lo + i * dx)) / dx;
  double v = (y - (dom.y_lo + j * dy)) / dy;
  auto id = [&dom](int ii, int jj) { return jj * dom.nx + ii; };
  int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
  std::vector<double> out(map.codomain_dim);
  // cell split along the v00-v11 diagonal
  if (u >= v) {
    for (int k = 0; k < map.codomain_dim; ++k)
      out[k] = (1 - u) * map.value(v00, k) + (u - v) * map.value(v10, k) + v * map.value(v11, k);
  } else {
    for (int k = 0; k < map.codomain_dim; ++k)
      out[k] = (1 - v) * map.value(v00, k) + u * map.value(v11, k) + (v - u) * map.value(v01, k);
  }
  return out;
}

double value_range(const SampledMap& map) {
  if (map.values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
  return *hi - *lo;
}

double value_scale(const SampledMap& map, const TargetPoint& a) {
  double s = 1.0;
  for (double v : map.values) s = std::max(s, std::abs(v));
  for (double v : a.a) s = std::max(s, std::abs(v));
  return s;
}

std::vector<int> non_generic_vertices(const SampledMap& map, const TargetPoint& a) {
  if ((int)a.a.size() != map.codomain_dim) throw std::invalid_argument("target arity mismatch");
  double tol = 1e-12 * value_scale(map, a);
  std::set<int> bad;
  for (int v = 0; v < map.vertex_count(); ++v) {
    if (map.zero_sign[v] != 0) continue;  // refinement vertices sit on the target by design
    if (map.well_value(v, a) <= tol) bad.insert(v);
  }
  if (map.domain_dim() == 2) {
    double tol2 = 1e-12 * value_scale(map, a) * value_scale(map, a);
    for (const auto& t : map.tris) {
      double c[3];
      bool skip = false;
      for (int e = 0; e < 3; ++e) {
        int u = t[e], w = t[(e + 1) % 3];
        if (map.zero_sign[u] || map.zero_sign[w]) skip = true;
        c[e] = cross2(map.value(w, 0) - map.value(u, 0), map.value(w, 1) - map.value(u, 1),
                      a.a[0] - map.value(u, 0), a.a[1] - map.value(u, 1));
      }
      if (skip) continue;
      bool all_nonneg = c[0] >= -tol2 && c[1] >= -tol2 && c[2] >= -tol2;
      bool all_nonpos = c[0] <= tol2 && c[1] <= tol2 && c[2] <= tol2;
      bool near_edge = std::abs(c[0]) <= tol2 || std::abs(c[1]) <= tol2 || std::abs(c[2]) <= tol2;
      if ((all_nonneg || all_nonpos) && near_edge)
        for (int k = 0; k < 3; ++k) bad.insert(t[k]);
    }
  }
  return {bad.begin(), bad.end()};
}

SampledMap apply_jitter(const SampledMap& map, const TargetPoint& a) {
  SampledMap out = map;
  double range = value_range(map);
  if (range == 0.0) {
    // constant map; if it sits on the target no jitter can separate scales
    if (map.vertex_count() > 0 && map.well_value(0, a) <= 1e-12 * value_scale(map, a))
      throw NonGenericError("degenerate map: constant and equal to the target");
    return out;
  }
  double eta = 1e-9 * range;
  for (int round = 0; round < 8; ++round) {
    std::vector<int> bad = non_generic_vertices(out, a);
    if (bad.empty()) return out;
    for (int v : bad) {
      for (int k = 0; k < out.codomain_dim; ++k) {
        // vary sign and size per coordinate, else the push can slide a value
        // edge along itself (e.g. diagonal edges of an identity-like map)
        uint64_t h = (uint64_t)v * 0x9e3779b97f4a7c15ull +
                     (uint64_t)k * 0xbf58476d1ce4e5b9ull + (uint64_t)round;
        h ^= h >> 31; h *= 0x94d049bb133111ebull; h ^= h >> 29;
        double d = (h & 1 ? eta : -eta) * (1.0 + 0.25 * ((h >> 1) & 3));
        out.value(v, k) += d;
      }
    }
    eta *= 2.0;
  }
  if (!non_generic_vertices(out, a).empty())
    throw NonGenericError("jitter failed to remove degeneracy");
  return out;
}

SampledMap refine_at_crossings(const SampledMap& map, const TargetPoint& a) {
  if (map.domain_dim() != 1) throw std::invalid_argument("refine_at_crossings: 1-D domains only");
  if (map.codomain_dim != 1) throw std::invalid_argument("refine_at_crossings: codomain_dim 1 only");
  if (!non_generic_vertices(map, a).empty())
    throw NonGenericError("vertex value equals the target; jitter or reject");
  double aa = a.a[0];
  struct V {
    double x;
    double val;
    int8_t zero;
    uint8_t boundary;
  };
  std::vector<V> verts;
  verts.reserve(map.px.size() + 8);
  for (int i = 0; i < map.vertex_count(); ++i) {
    verts.push_back({map.px[i], map.value(i, 0), map.zero_sign[i], map.on_boundary[i]});
    if (i + 1 < map.vertex_count()) {
      double du = map.value(i, 0) - aa;
      double dv = map.value(i + 1, 0) - aa;
      if ((du < 0 && dv > 0) || (du > 0 && dv < 0)) {
        double t = du / (du - dv);
        double x = map.px[i] + t * (map.px[i + 1] - map.px[i]);
        verts.push_back({x, aa, (int8_t)(dv > 0 ? 1 : -1), 0});
      }
    }
  }
  if ((int)verts.size() > kMaxVertices) throw SizeLimitError("refined mesh too large");
  SampledMap out;
  out.domain = map.domain;
  out.codomain_dim = 1;
  for (const V& v : verts) {
    out.px.push_back(v.x);
    out.values.push_back(v.val);
    out.zero_sign.push_back(v.zero);
    out.on_boundary.push_back(v.boundary);
  }
  for (int i = 0; i + 1 < (int)verts.size(); ++i) out.edges.push_back({i, i + 1});
  return out;
}

SampledMap insert_zero_vertices(const SampledMap& map, const TargetPoint& a) {
  if (map.domain_dim() != 2) throw std::invalid_argument("insert_zero_vertices: 2-D domains only");
  if (map.codomain_dim != 2) throw std::invalid_argument("insert_zero_vertices: codomain_dim 2 only");
  if (!non_generic_vertices(map, a).empty())
    throw NonGenericError("target degenerate against the value triangulation; jitter or reject");
  SampledMap out = map;
  std::vector<std::array<int, 3>> tris;
  tris.reserve(out.tris.size());
  for (const auto& t : map.tris) {
    double y[3][2];
    for (int k = 0; k < 3; ++k) {
      y[k][0] = map.value(t[k], 0);
      y[k][1] = map.value(t[k], 1);
    }
    double c[3];
    for (int e = 0; e < 3; ++e) {
      int u = e, w = (e + 1) % 3;
      c[e] = cross2(y[w][0] - y[u][0], y[w][1] - y[u][1], a.a[0] - y[u][0], a.a[1] - y[u][1]);
    }
    bool inside_pos = c[0] > 0 && c[1] > 0 && c[2] > 0;
    bool inside_neg = c[0] < 0 && c[1] < 0 && c[2] < 0;
    if (!inside_pos && !inside_neg) {
      tris.push_back(t);
      continue;
    }
    double det = cross2(y[1][0] - y[0][0], y[1][1] - y[0][1], y[2][0] - y[0][0], y[2][1] - y[0][1]);
    double l0 = cross2(y[1][0] - a.a[0], y[1][1] - a.a[1], y[2][0] - a.a[0], y[2][1] - a.a[1]) / det;
    double l1 = cross2(y[2][0] - a.a[0], y[2][1] - a.a[1], y[0][0] - a.a[0], y[0][1] - a.a[1]) / det;
    double l2 = 1.0 - l0 - l1;
    int z = out.vertex_count();
    out.px.push_back(l0 * map.px[t[0]] + l1 * map.px[t[1]] + l2 * map.px[t[2]]);
    out.py.push_back(l0 * map.py[t[0]] + l1 * map.py[t[1]] + l2 * map.py[t[2]]);
    out.values.push_back(a.a[0]);
    out.values.push_back(a.a[1]);
    out.on_boundary.push_back(0);
    out.zero_sign.push_back(inside_pos ? 1 : -1);
    out.edges.push_back({t[0], z});
    out.edges.push_back({t[1], z});
    out.edges.push_back({t[2], z});
    tris.push_back({t[0], t[1], z});
    tris.push_back({t[1], t[2], z});
    tris.push_back({t[2], t[0], z});
  }
  out.tris = std::move(tris);
  if (out.vertex_count() > kMaxVertices) throw SizeLimitError("subdivided mesh too large");
  return out;
}

int winding_number(const std::vector<std::array<double, 2>>& loop,
                   const std::array<double, 2>& a) {
  if (loop.size() < 3) throw std::invalid_argument("winding_number: need a closed loop");
  double scale = 1.0;
  for (const auto& p : loop) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  double tol = 1e-12 * scale;
  int wind = 0;
  for (size_t i = 0; i < loop.size(); ++i) {
    const auto& p = loop[i];
    const auto& q = loop[(i + 1) % loop.size()];
    bool below_p = p[1] < a[1];
    bool below_q = q[1] < a[1];
    if (below_p == below_q) continue;
    double t = (a[1] - p[1]) / (q[1] - p[1]);
    double xc = p[0] + t * (q[0] - p[0]);
    if (std::abs(xc - a[0]) <= tol) throw NonGenericError("loop passes through the target");
    if (xc > a[0]) wind += below_p ? 1 : -1;
  }
  return wind;
}

}  // namespace wellkit
