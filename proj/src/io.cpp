#include "wellkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace wellkit {

using json = nlohmann::ordered_json;

namespace {

// Shortest round-trip decimal form, independent of the global locale.
std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json value_or_inf(double x) {
  if (std::isinf(x)) return json("inf");
  return json(x);
}

double number_or_inf(const json& j, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw ParseError(std::string(what) + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

SampledMap parse_map(const std::string& text) {
  json j = parse_text(text);
  try {
    const json& dom = field(j, "domain");
    int codim = field(j, "codomain_dim").get<int>();
    std::vector<std::vector<double>> values;
    for (const json& row : field(j, "values")) {
      std::vector<double> v;
      for (const json& x : row) v.push_back(x.get<double>());
      values.push_back(std::move(v));
    }
    std::string kind = field(dom, "kind").get<std::string>();
    if (kind == "interval") {
      Interval1D d{field(dom, "lo").get<double>(), field(dom, "hi").get<double>(),
                   field(dom, "n").get<int>()};
      return build_map(d, values, codim);
    }
    if (kind == "grid") {
      TriangulatedRect d{field(dom, "x_lo").get<double>(), field(dom, "x_hi").get<double>(),
                         field(dom, "y_lo").get<double>(), field(dom, "y_hi").get<double>(),
                         field(dom, "nx").get<int>(),      field(dom, "ny").get<int>()};
      return build_map(d, values, codim);
    }
    throw ParseError("domain kind must be \"interval\" or \"grid\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad map file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad map file: ") + e.what());
  }
}

std::string dump_map(const SampledMap& map) {
  json dom;
  int expect = 0;
  if (const auto* iv = std::get_if<Interval1D>(&map.domain)) {
    dom = {{"kind", "interval"}, {"lo", iv->lo}, {"hi", iv->hi}, {"n", iv->n}};
    expect = iv->n;
  } else {
    const auto& g = std::get<TriangulatedRect>(map.domain);
    dom = {{"kind", "grid"}, {"x_lo", g.x_lo}, {"x_hi", g.x_hi}, {"y_lo", g.y_lo},
           {"y_hi", g.y_hi}, {"nx", g.nx},     {"ny", g.ny}};
    expect = g.nx * g.ny;
  }
  if (map.vertex_count() != expect)
    throw std::logic_error("dump_map needs an unrefined map");
  json values = json::array();
  for (int v = 0; v < map.vertex_count(); ++v) {
    json row = json::array();
    for (int k = 0; k < map.codomain_dim; ++k) row.push_back(map.value(v, k));
    values.push_back(std::move(row));
  }
  json j = {{"domain", dom}, {"codomain_dim", map.codomain_dim}, {"values", values}};
  return j.dump();
}

WellDiagram parse_well_diagram(const std::string& text) {
  json j = parse_text(text);
  try {
    WellDiagram d;
    for (const json& p : field(j, "points")) {
      DiagramPoint q;
      q.value = number_or_inf(field(p, "value"), "point value");
      q.multiplicity = field(p, "multiplicity").get<int>();
      std::string flag = field(p, "flag").get<std::string>();
      if (flag != "interior" && flag != "boundary")
        throw ParseError("point flag must be \"interior\" or \"boundary\"");
      q.boundary_limited = flag == "boundary";
      d.points.push_back(q);
    }
    d.rank_at_zero = field(j, "rank_at_zero").get<int>();
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad diagram file: ") + e.what());
  }
}

std::string dump_well_diagram(const WellDiagram& d) {
  json points = json::array();
  for (const auto& p : d.points)
    points.push_back({{"value", value_or_inf(p.value)},
                      {"multiplicity", p.multiplicity},
                      {"flag", p.boundary_limited ? "boundary" : "interior"}});
  json j = {{"points", points}, {"rank_at_zero", d.rank_at_zero}};
  return j.dump();
}

PersistenceDiagram parse_persistence(const std::string& text) {
  json j = parse_text(text);
  try {
    if (!j.is_array()) throw ParseError("persistence file must be a JSON array");
    PersistenceDiagram d;
    for (const json& p : j) {
      PersistencePair q;
      q.dim = field(p, "dim").get<int>();
      q.birth = number_or_inf(field(p, "birth"), "birth");
      q.death = number_or_inf(field(p, "death"), "death");
      d.pairs.push_back(q);
    }
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad persistence file: ") + e.what());
  }
}

std::string dump_persistence(const PersistenceDiagram& d) {
  json j = json::array();
  for (const auto& p : d.pairs)
    j.push_back({{"dim", p.dim}, {"birth", p.birth}, {"death", value_or_inf(p.death)}});
  return j.dump();
}

std::string dump_report(const StabilityReport& r) {
  json j = {{"check", r.check},
            {"trials", r.trials},
            {"violations", r.violations},
            {"worst_slack", r.worst_slack},
            {"seed", r.seed}};
  return j.dump();
}

std::string contour_csv(const ContourField& field) {
  std::string out;
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      if (i) out += ',';
      double v = field.cells[(size_t)j * field.grid.nx + i].value;
      out += std::isinf(v) ? "inf" : fmt(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

// Minimal hand-rolled SVG. Plots are display-only; layout constants are
// arbitrary but fixed so output stays byte-identical.
struct Svg {
  std::ostringstream body;
  int w, h;
  Svg(int w_, int h_) : w(w_), h(h_) {}
  void line(double x1, double y1, double x2, double y2, const char* stroke) {
    body << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
         << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void circle(double cx, double cy, double r, const char* fill) {
    body << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void rect(double x, double y, double w_, double h_, const std::string& fill) {
    body << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w_)
         << "\" height=\"" << fmt(h_) << "\" fill=\"" << fill << "\"/>\n";
  }
  void text(double x, double y, const std::string& s) {
    body << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
         << "\" font-family=\"monospace\" font-size=\"11\">" << s << "</text>\n";
  }
  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

std::string gray(double t) {
  int g = (int)std::lround(255.0 * std::clamp(t, 0.0, 1.0));
  char buf[16];
  snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
  return buf;
}

}  // namespace

std::string well_diagram_svg(const WellDiagram& d) {
  const int W = 480, H = 160, margin = 40, axis_y = H - 40;
  Svg svg(W, H);
  double vmax = 1.0;
  for (const auto& p : d.points)
    if (std::isfinite(p.value)) vmax = std::max(vmax, p.value);
  double span = W - 2 * margin - 60;  // keep a right margin band for infinity
  auto sx = [&](double v) { return margin + span * v / vmax; };

  svg.line(margin, axis_y, W - margin, axis_y, "black");
  for (int t = 0; t <= 4; ++t) {
    double v = vmax * t / 4;
    svg.line(sx(v), axis_y - 3, sx(v), axis_y + 3, "black");
    svg.text(sx(v) - 8, axis_y + 16, fmt(std::round(v * 100) / 100));
  }
  double inf_x = W - margin;
  svg.text(inf_x - 4, axis_y + 16, "&#8734;");
  for (const auto& p : d.points) {
    double x = std::isinf(p.value) ? inf_x : sx(p.value);
    for (int m = 0; m < p.multiplicity; ++m)
      svg.circle(x, axis_y - 8 - 12 * m, 4, p.boundary_limited ? "orange" : "black");
  }
  svg.text(margin, 16, "well diagram, rank at zero = " + std::to_string(d.rank_at_zero));
  return svg.str();
}

std::string persistence_svg(const PersistenceDiagram& d) {
  const int W = 360, H = 360, margin = 40;
  Svg svg(W, H);
  double vmax = 1.0;
  for (const auto& p : d.pairs) {
    if (std::isfinite(p.birth)) vmax = std::max(vmax, p.birth);
    if (std::isfinite(p.death)) vmax = std::max(vmax, p.death);
  }
  auto sx = [&](double v) { return margin + (W - 2.0 * margin) * v / vmax; };
  auto sy = [&](double v) { return H - margin - (H - 2.0 * margin) * v / vmax; };
  svg.line(margin, H - margin, W - margin, H - margin, "black");
  svg.line(margin, H - margin, margin, margin, "black");
  svg.line(sx(0), sy(0), sx(vmax), sy(vmax), "gray");
  for (const auto& p : d.pairs) {
    double y = std::isinf(p.death) ? margin - 10 : sy(p.death);
    svg.circle(sx(p.birth), y, 3, p.dim == 0 ? "black" : "blue");
  }
  svg.text(margin, 16, "persistence, births right, deaths up, top band = &#8734;");
  return svg.str();
}

std::string contour_svg(const ContourField& field) {
  const int cell = 12, margin = 20;
  int W = margin * 2 + cell * field.grid.nx, H = margin * 2 + cell * field.grid.ny;
  Svg svg(W, H);
  double vmax = 0.0;
  for (const auto& c : field.cells)
    if (std::isfinite(c.value)) vmax = std::max(vmax, c.value);
  if (vmax == 0.0) vmax = 1.0;
  for (int j = 0; j < field.grid.ny; ++j)
    for (int i = 0; i < field.grid.nx; ++i) {
      const auto& c = field.cells[(size_t)j * field.grid.nx + i];
      // large robustness shows light, zero shows black, infinite pure white
      std::string fill = std::isinf(c.value) ? "#ffffff" : gray(c.value / vmax);
      svg.rect(margin + cell * i, margin + cell * (field.grid.ny - 1 - j), cell, cell, fill);
    }
  return svg.str();
}

}  // namespace wellkit
