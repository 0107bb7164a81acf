#pragma once

#include <limits>
#include <vector>

#include "wellkit/mesh.hpp"

namespace wellkit {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FiltrationCell {
  int dim = 0;
  double value = 0.0;
  std::vector<int> boundary;  // positions of facets, all smaller than own position
};

// Cells sorted by (value, dim, insertion id); positions are the cell ids.
struct Filtration {
  std::vector<FiltrationCell> cells;
};

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInf;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
};

// Lower-star filtration of the well function |f - a| on the mesh: every cell
// enters at the max well value over its vertices.
Filtration sublevel_filtration(const SampledMap& map, const TargetPoint& a);

// Throws std::invalid_argument when values decrease along the order or a
// boundary entry does not precede its coface.
void validate(const Filtration& f);

// Standard column reduction over Z2. Zero-persistence pairs are kept;
// unpaired creators become essential classes with death = inf.
PersistenceDiagram reduce(const Filtration& f);

// Sorted distinct finite births and deaths of classes with birth != death
// (values where sublevel homology changes).
std::vector<double> critical_values(const PersistenceDiagram& d);

// Exact bottleneck distance with diagonal augmentation, L-inf ground metric,
// and dimension-respecting matches. Only diagrams with at most 12
// off-diagonal points each are accepted (SizeLimitError otherwise).
double bottleneck_small(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

}  // namespace wellkit
