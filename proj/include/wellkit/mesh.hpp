#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "wellkit/error.hpp"

namespace wellkit {

// Uniformly sampled closed interval [lo, hi] with n >= 2 vertices.
struct Interval1D {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
};

// Axis-aligned box triangulated by splitting each grid cell along the
// lower-left to upper-right diagonal. nx, ny >= 2 vertices per side.
struct TriangulatedRect {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
  int nx = 2, ny = 2;
};

struct TargetPoint {
  std::vector<double> a;
};

// Piecewise linear map sampled at mesh vertices. The vertex arrays may grow
// past the generating domain description: 1-D crossing refinement and 2-D
// zero insertion append vertices whose value is exactly the target, tagged in
// zero_sign with the local crossing sign.
struct SampledMap {
  std::variant<Interval1D, TriangulatedRect> domain;
  int codomain_dim = 1;
  std::vector<double> px, py;  // py unused for 1-D domains
  std::vector<double> values;  // vertex major, stride codomain_dim
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tris;  // counterclockwise
  std::vector<uint8_t> on_boundary;
  std::vector<int8_t> zero_sign;

  int domain_dim() const { return std::holds_alternative<Interval1D>(domain) ? 1 : 2; }
  int vertex_count() const { return (int)px.size(); }
  double value(int v, int k) const { return values[(size_t)v * codomain_dim + k]; }
  double& value(int v, int k) { return values[(size_t)v * codomain_dim + k]; }

  // Euclidean distance from f(v) to the target.
  double well_value(int v, const TargetPoint& a) const;
};

SampledMap build_map(const Interval1D& dom, const std::vector<std::vector<double>>& vertex_values,
                     int codomain_dim = 1);
SampledMap build_map(const TriangulatedRect& dom,
                     const std::vector<std::vector<double>>& vertex_values, int codomain_dim);

// Piecewise linear evaluation. Throws std::invalid_argument outside the domain.
std::vector<double> eval(const SampledMap& map, double x);
std::vector<double> eval(const SampledMap& map, double x, double y);

// Value scale used by tolerance and jitter formulas.
double value_scale(const SampledMap& map, const TargetPoint& a);
double value_range(const SampledMap& map);

// Vertices participating in a degeneracy against the target: a vertex value
// at the target, or (2-D) the target on the boundary of a value triangle.
std::vector<int> non_generic_vertices(const SampledMap& map, const TargetPoint& a);

// Perturbs offending values by eta = 1e-9 * value range, sign chosen by
// vertex index parity. Escalates eta on repeat and throws NonGenericError if
// the degeneracy survives.
SampledMap apply_jitter(const SampledMap& map, const TargetPoint& a);

// 1-D only: inserts a vertex with value exactly a at every sign change of
// f - a, so preimage components are vertex sets. Requires a generic map.
SampledMap refine_at_crossings(const SampledMap& map, const TargetPoint& a);

// 2-D only: star-subdivides every triangle whose linear piece hits the
// target, adding the preimage point as a vertex with value exactly a and the
// orientation sign of the value triangle in zero_sign. The map is unchanged
// as a function.
SampledMap insert_zero_vertices(const SampledMap& map, const TargetPoint& a);

// Winding number of a closed polygonal loop of codomain values around a,
// counted by signed crossings of the horizontal ray to the right of a.
// Throws NonGenericError when the loop meets the target.
int winding_number(const std::vector<std::array<double, 2>>& loop, const std::array<double, 2>& a);

}  // namespace wellkit
