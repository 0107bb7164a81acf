#pragma once

#include <string>

#include "wellkit/applications.hpp"
#include "wellkit/persistence.hpp"
#include "wellkit/stability.hpp"
#include "wellkit/wellcore.hpp"

namespace wellkit {

// Map files: {"domain": {"kind": "interval", "lo", "hi", "n"} |
//                       {"kind": "grid", "x_lo", "x_hi", "y_lo", "y_hi", "nx", "ny"},
//             "codomain_dim": 1|2, "values": [[..], ..]}
// Anything malformed throws ParseError. dump_map requires an unrefined map
// (vertex count still matches the domain descriptor).
SampledMap parse_map(const std::string& text);
std::string dump_map(const SampledMap& map);

// {"points": [{"value": x|"inf", "multiplicity": k, "flag": "interior"|"boundary"}],
//  "rank_at_zero": n}
WellDiagram parse_well_diagram(const std::string& text);
std::string dump_well_diagram(const WellDiagram& d);

// [{"dim": d, "birth": x, "death": y|"inf"}, ..]
PersistenceDiagram parse_persistence(const std::string& text);
std::string dump_persistence(const PersistenceDiagram& d);

std::string dump_report(const StabilityReport& r);

// Value matrix, one row per grid y, lowest y first.
std::string contour_csv(const ContourField& field);

// Display-only plots.
std::string well_diagram_svg(const WellDiagram& d);
std::string persistence_svg(const PersistenceDiagram& d);
std::string contour_svg(const ContourField& field);

}  // namespace wellkit
