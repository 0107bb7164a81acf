#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wellkit/io.hpp"
#include "wellkit/matching.hpp"

using namespace wellkit;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << body;
  }
}

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

TargetPoint target_for(const SampledMap& m, std::vector<double> a) {
  if (a.empty()) a.assign(m.codomain_dim, 0.0);
  if ((int)a.size() != m.codomain_dim)
    throw ParseError("target dimension does not match the map codomain");
  return TargetPoint{std::move(a)};
}

ojson value_or_inf(double x) { return std::isinf(x) ? ojson("inf") : ojson(x); }

ojson diagram_json(const WellDiagram& d) {
  ojson points = ojson::array();
  for (const auto& p : d.points)
    points.push_back({{"value", value_or_inf(p.value)},
                      {"multiplicity", p.multiplicity},
                      {"flag", p.boundary_limited ? "boundary" : "interior"}});
  return {{"points", points}, {"rank_at_zero", d.rank_at_zero}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robustness of zeros and fixed points of sampled piecewise-linear maps"};
  app.require_subcommand(1);

  int threads = 0;
  uint64_t seed = 0;
  bool jitter = false;
  std::string output, format = "json";
  app.add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--seed", seed, "random seed (WELLKIT_SEED overrides)");
  app.add_flag("--jitter", jitter, "nudge non-generic inputs instead of failing");
  app.add_option("-o,--output", output, "write to a file instead of stdout");
  app.fallthrough();

  std::string input, input2;
  std::vector<double> target;
  bool extension = false;

  auto* cmd_well = app.add_subcommand("well-diagram", "well diagram of a map against a target");
  cmd_well->add_option("input", input, "map JSON file")->required();
  cmd_well->add_option("--target", target, "target point (defaults to the origin)");
  cmd_well->add_flag("--extension", extension, "clamped-extension mode");
  cmd_well->add_option("--format", format, "json | svg")->capture_default_str();

  auto* cmd_pers = app.add_subcommand("persistence", "sublevel persistence of the well function");
  cmd_pers->add_option("input", input, "map JSON file")->required();
  cmd_pers->add_option("--target", target, "target point (defaults to the origin)");
  cmd_pers->add_option("--format", format, "json | svg")->capture_default_str();

  auto* cmd_bottle = app.add_subcommand("bottleneck", "bottleneck distance of two well diagrams");
  cmd_bottle->add_option("first", input, "well diagram JSON file")->required();
  cmd_bottle->add_option("second", input2, "well diagram JSON file")->required();

  int orbit = 0, samples = 0;
  bool fixed_points = false;
  auto* cmd_rob = app.add_subcommand("robustness", "fixed point or periodic orbit robustness");
  cmd_rob->add_option("input", input, "self-map JSON file")->required();
  auto* fp_flag = cmd_rob->add_flag("--fixed-points", fixed_points, "robustness of fixed points");
  auto* orbit_opt = cmd_rob->add_option("--orbit", orbit, "period j of the orbits to price");
  cmd_rob->add_option("--samples", samples,
                      "composite-sampled draws per radius step (orbit mode)");
  fp_flag->excludes(orbit_opt);

  int trials = 500;
  std::string check = "all";
  auto* cmd_stab = app.add_subcommand("stability", "randomized stability property suites");
  cmd_stab->add_option("--trials", trials, "trials per suite")->capture_default_str();
  cmd_stab->add_option("--check", check, "all | distance | stability | shrinking | bridge")
      ->capture_default_str();

  std::vector<double> grid_args;
  auto* cmd_contour = app.add_subcommand("contour-field", "robustness over a grid of targets");
  cmd_contour->add_option("input", input, "planar map JSON file")->required();
  cmd_contour
      ->add_option("--grid", grid_args, "x_lo x_hi y_lo y_hi nx ny")
      ->expected(6)
      ->required();
  cmd_contour->add_option("--format", format, "csv | svg")->default_str("csv");

  auto* cmd_table = app.add_subcommand("table1", "rank table of the canonical fixture");
  (void)cmd_table;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (const char* env = std::getenv("WELLKIT_SEED")) {
    char* end = nullptr;
    seed = std::strtoull(env, &end, 10);
  }
  omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());

  try {
    if (cmd_well->parsed()) {
      SampledMap m = parse_map(slurp(input));
      WellOptions opts{jitter, extension};
      WellDiagram d = well_diagram(m, target_for(m, target), opts);
      if (format == "svg")
        emit(well_diagram_svg(d), output);
      else
        emit(dump_well_diagram(d), output);
    } else if (cmd_pers->parsed()) {
      SampledMap m = parse_map(slurp(input));
      PersistenceDiagram d = reduce(sublevel_filtration(m, target_for(m, target)));
      if (format == "svg")
        emit(persistence_svg(d), output);
      else
        emit(dump_persistence(d), output);
    } else if (cmd_bottle->parsed()) {
      WellDiagram a = parse_well_diagram(slurp(input));
      WellDiagram b = parse_well_diagram(slurp(input2));
      emit(fmt(match_diagrams(a, b).bottleneck), output);
    } else if (cmd_rob->parsed()) {
      if (!fixed_points && orbit < 1)
        throw ParseError("pass --fixed-points or --orbit <j>");
      SampledMap b = parse_map(slurp(input));
      ojson out;
      if (fixed_points) {
        FixedPointResult res = fixed_point_robustness(b);
        out["diagram"] = diagram_json(res.diagram);
        out["self_map_violated"] = res.self_map_violated;
        ojson pts = ojson::array();
        for (const auto& p : res.points) {
          ojson q = {{"x", p.x}};
          if (b.domain_dim() == 2) q["y"] = p.y;
          q["robustness"] = value_or_inf(p.robustness);
          q["boundary_limited"] = p.boundary_limited;
          pts.push_back(std::move(q));
        }
        out["points"] = std::move(pts);
      } else {
        OrbitResult res = orbit_robustness(b, orbit, samples > 0, samples, seed, jitter);
        out["period"] = res.period;
        out["composite_mode"] = res.composite_mode;
        out["diagram"] = diagram_json(res.diagram);
        out["self_map_violated"] = res.self_map_violated;
        ojson pts = ojson::array();
        for (const auto& p : res.points) {
          ojson q = {{"x", p.zero.x}};
          if (b.domain_dim() == 2) q["y"] = p.zero.y;
          q["robustness"] = value_or_inf(p.zero.robustness);
          q["boundary_limited"] = p.zero.boundary_limited;
          if (res.composite_mode) {
            q["composite_draw_bound"] = value_or_inf(p.composite_draw_bound);
            q["composite_realized"] = value_or_inf(p.composite_realized);
          }
          pts.push_back(std::move(q));
        }
        out["points"] = std::move(pts);
      }
      emit(out.dump(), output);
    } else if (cmd_stab->parsed()) {
      std::vector<StabilityReport> reports;
      if (check == "all" || check == "distance")
        reports.push_back(distance_lemma_suite(trials, seed));
      if (check == "all" || check == "stability")
        reports.push_back(stability_suite(trials, seed));
      if (check == "all" || check == "shrinking")
        reports.push_back(shrinking_suite(trials, seed));
      if (check == "all" || check == "bridge") reports.push_back(bridge_suite(trials, seed));
      if (reports.empty()) throw ParseError("unknown stability check: " + check);
      std::string body = "[";
      for (size_t i = 0; i < reports.size(); ++i) {
        if (i) body += ',';
        body += dump_report(reports[i]);
      }
      body += "]";
      emit(body, output);
      for (const auto& r : reports)
        if (r.violations > 0) return 1;
    } else if (cmd_contour->parsed()) {
      SampledMap m = parse_map(slurp(input));
      TriangulatedRect grid{grid_args[0], grid_args[1], grid_args[2],
                            grid_args[3], (int)grid_args[4], (int)grid_args[5]};
      if (grid.nx < 2 || grid.ny < 2) throw ParseError("grid needs nx, ny >= 2");
      ContourField field = contour_field(m, grid);
      emit(format == "svg" ? contour_svg(field) : contour_csv(field), output);
    } else if (cmd_table->parsed()) {
      SampledMap m = build_map(Interval1D{0.0, 4.0, 5},
                               {{-4.0}, {3.0}, {-2.0}, {1.0}, {-4.0}}, 1);
      RankProfile prof = rank_profile(well_function(m, TargetPoint{{0.0}}, {}));
      std::string f_row = "F:", u_row = "U:";
      for (size_t i = 0; i < 4 && i < prof.homology_ranks.size(); ++i) {
        f_row += ' ' + std::to_string(prof.homology_ranks[i]);
        u_row += ' ' + std::to_string(prof.well_ranks[i]);
      }
      emit(f_row + '\n' + u_row, output);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const NonGenericError& e) {
    std::cerr << "non-generic input: " << e.what() << '\n';
    return 3;
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
