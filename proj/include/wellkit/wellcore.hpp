#pragma once

#include <array>
#include <vector>

#include "wellkit/mesh.hpp"
#include "wellkit/z2.hpp"

namespace wellkit {

struct WellOptions {
  // Nudge degenerate vertex values instead of rejecting the input.
  bool jitter = false;
  // Treat the map as restricted from x - b(clamp(x)): outside the box the map
  // grows like the identity, so boundary contact cannot kill a class.
  bool extension = false;
};

// Jitters if needed (or throws NonGenericError) and makes every preimage
// point of the target a vertex carrying its orientation sign. Idempotent.
SampledMap prepare_map(const SampledMap& map, const TargetPoint& a, const WellOptions& opts);

// Distance from the map value to the target, per vertex of the prepared mesh.
// Zero exactly on the preimage vertices.
struct WellFunction {
  SampledMap mesh;
  TargetPoint target;
  WellOptions options;
  std::vector<double> vertex_values;
};

WellFunction well_function(const SampledMap& map, const TargetPoint& a,
                           const WellOptions& opts = {});

// One connected piece of the sublevel complex {w <= r}: the full subcomplex
// on the included vertices.
struct ComponentSnapshot {
  double radius = 0.0;
  std::vector<int> members;  // vertex ids, sorted
  // 1-D boundary data: signs of f - a just outside the run. Zero marks a side
  // ending at the domain boundary with no extension to consult.
  int left_sign = 0;
  int right_sign = 0;
  // 2-D boundary data: directed rim edges of the filled triangle region,
  // oriented so the region lies on the left.
  std::vector<std::array<int, 2>> rim;
  int degree = 0;
  bool touches_domain_boundary = false;
  bool well = false;
};

std::vector<ComponentSnapshot> components_at(const WellFunction& w, double r);

// Recomputes the degree from boundary data alone: 1-D from the outside signs,
// 2-D from the winding of f - a along the rim. Falls back to the sum of
// preimage orientation signs when the rim is absent or degenerate.
int local_degree(const SampledMap& mesh, const TargetPoint& a, const ComponentSnapshot& c);

struct WellGroupSnapshot {
  double radius = 0.0;
  std::vector<ComponentSnapshot> components;
  Subspace well_basis;  // span of the well components' unit vectors

  int homology_rank() const { return (int)components.size(); }
  int rank() const { return (int)well_basis.basis.size(); }
};

WellGroupSnapshot well_group_at(const WellFunction& w, double r);

// Distinct positive vertex values of w: the component structure is constant
// on the open intervals between consecutive entries.
std::vector<double> vertex_events(const WellFunction& w);

// Ranks per interval, evaluated at interval midpoints. Entry i covers
// (events[i-1], events[i]) with events[-1] = 0 and a final unbounded entry.
struct RankProfile {
  std::vector<double> events;
  std::vector<int> homology_ranks;
  std::vector<int> well_ranks;
};

RankProfile rank_profile(const WellFunction& w);         // independent evaluations, parallel
RankProfile rank_profile_serial(const WellFunction& w);  // one incremental merge sweep

// Radii where the well rank drops.
std::vector<double> terminal_critical_values(const RankProfile& profile);
std::vector<double> terminal_critical_values(const WellFunction& w);

// Component-inclusion map between two snapshots of the same mesh at growing
// radii: column c maps to the row of the component swallowing it.
BitMatrix inclusion_matrix(const std::vector<ComponentSnapshot>& lo,
                           const std::vector<ComponentSnapshot>& hi, int vertex_count);

// Zigzag of well groups at radii interleaving the terminal critical values,
// with quotients Q_i = U_i / K_i, surjective forward maps a_i and injective
// backward maps b_i.
struct WellModule {
  std::vector<double> terminal_values;    // u_1 < ... < u_l
  std::vector<double> radii;              // r_0 < u_1 < r_1 < ... < u_l < r_l
  std::vector<WellGroupSnapshot> groups;  // U_i at radii[i]
  std::vector<BitMatrix> maps;            // component maps radii[i] -> radii[i+1]
  std::vector<Subspace> vanishing;        // K_i = U_i intersect ker maps[i]
  std::vector<BitMatrix> forward;         // a_i: U_i -> Q_i
  std::vector<BitMatrix> backward;        // b_i: U_{i+1} -> Q_i
  std::vector<int> multiplicities;        // rank drop across each terminal value
  std::vector<char> boundary_deaths;      // some class dying here hit the boundary
  int infinite_multiplicity = 0;          // rank of the last group
  bool extension = false;
};

WellModule build_well_module(const WellFunction& w);

// Nested subspaces of U_0: lower[i] holds the classes whose image vanishes
// past level i, upper[i] those whose image is still well at level i.
// lower[0] <= ... <= lower[l] = upper[l] <= ... <= upper[0] = U_0.
struct LeftFiltration {
  std::vector<Subspace> lower;
  std::vector<Subspace> upper;
  std::vector<BitVector> compatible_basis;  // basis of U_0 refining every group
  std::vector<double> fall_ill;             // per basis vector; kInf = survives
};

LeftFiltration left_filtration(const WellModule& mod);

struct DiagramPoint {
  double value = 0.0;  // kInf for classes that never die
  int multiplicity = 0;
  bool boundary_limited = false;  // death forced by domain boundary contact
};

struct WellDiagram {
  std::vector<DiagramPoint> points;  // ascending, infinite point last
  int rank_at_zero = 0;
};

WellDiagram well_diagram(const WellModule& mod);
WellDiagram well_diagram(const SampledMap& map, const TargetPoint& a,
                         const WellOptions& opts = {});

// Robustness of each preimage point: the first event where its containing
// component stops being well, traced over the full event grid.
struct ZeroPoint {
  int vertex = -1;  // vertex id in the prepared mesh
  double x = 0.0;
  double y = 0.0;
  double robustness = 0.0;  // kInf = never stops
  bool boundary_limited = false;
};

std::vector<ZeroPoint> robustness(const WellFunction& w);

}  // namespace wellkit
