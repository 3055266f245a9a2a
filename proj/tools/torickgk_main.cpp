// torickgk command-line interface.
//
// Subcommands: check-polytope, curvature, identities, compactify, deform,
// extremal. Every run is driven by one JSON config file (-c/--config);
// --out/--format/--seed/--tol-scale override the corresponding config fields.
// Exit codes: 0 pass/success, 1 verdict failure, 2 usage or config error,
// 3 numerical error. Output is byte-identical across runs of the same config.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torickgk/compactify.hpp"
#include "torickgk/config.hpp"
#include "torickgk/curvature.hpp"
#include "torickgk/deform.hpp"
#include "torickgk/emit.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/report.hpp"

namespace {

using namespace torickgk;

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("-c,--config", a.config_path, "JSON run configuration")
      ->required();
  sub->add_option("--out", a.out, "output path (default: config, else stdout)");
  sub->add_option("--format", a.format, "csv|json|pgm (overrides config)")
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
  sub->add_option("--seed", a.seed, "PRNG seed (overrides config)");
  sub->add_option("--tol-scale", a.tol_scale,
                  "tolerance multiplier (overrides config)");
}

RunConfig load_with_overrides(const CommonArgs& a) {
  RunConfig cfg = load_config(a.config_path);
  if (!a.out.empty()) cfg.output.path = a.out;
  if (!a.format.empty()) cfg.output.format = a.format;
  if (a.seed) cfg.seed = *a.seed;
  if (a.tol_scale) {
    if (!(*a.tol_scale > 0))
      throw_config("ConfigValue", "--tol-scale must be > 0");
    cfg.tol_scale = *a.tol_scale;
  }
  return cfg;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_config("OutputWrite", "cannot open output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw_config("OutputWrite", "write failed: " + path);
}

int emit_report(const ReportDoc& doc, const RunConfig& cfg) {
  write_output(doc.to_json(), cfg.output.path);
  return doc.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_check_polytope(const CommonArgs& a) {
  RunConfig cfg = load_with_overrides(a);
  ReportDoc doc;
  doc.title = "polytope validation";
  try {
    auto P = build_polytope(cfg.normals, cfg.offsets);
    std::string note = "m = " + std::to_string(P->m) + ", facets = " +
                       std::to_string(P->d) + ", vertices = " +
                       std::to_string(P->vertices.size()) + ", faces = " +
                       std::to_string(P->faces.size());
    doc.add("delzant", true, static_cast<double>(P->vertices.size()), note);
  } catch (const Error& e) {
    doc.add("delzant", false, 0.0, e.what());
  }
  return emit_report(doc, cfg);
}

int cmd_curvature(const CommonArgs& a) {
  RunConfig cfg = load_with_overrides(a);
  GKStructure G = realize_structure(cfg);
  InteriorGrid grid =
      sample_interior(*G.polytope, cfg.grid.resolution, cfg.grid.epsilon);

  if (cfg.output.format == "csv") {
    std::string out;
    for (int i = 0; i < G.m; ++i) out += "mu" + std::to_string(i + 1) + ",";
    out += "u_gk";
    if (G.m == 2) out += ",p,u_j,s_g,lee2,lap_p";
    out += "\n";
    for (const Vec& x : grid.points) {
      for (int i = 0; i < G.m; ++i) out += format_double(x[i]) + ",";
      if (G.m == 2) {
        CurvaturePointData d = dim4_chain(G, x);
        out += format_double(d.u_gk) + "," + format_double(d.p) + "," +
               format_double(d.u_j) + "," + format_double(d.s_g) + "," +
               format_double(d.lee2) + "," + format_double(d.lap_p);
      } else {
        out += format_double(u_gk_at(G, x));
      }
      out += "\n";
    }
    write_output(out, cfg.output.path);
    return 0;
  }

  std::vector<double> values;
  values.reserve(grid.points.size());
  for (const Vec& x : grid.points) values.push_back(u_gk_at(G, x));
  ScalarField f = make_field(grid, std::move(values));
  write_output(cfg.output.format == "json" ? emit_json(f) : emit_pgm(f),
               cfg.output.path);
  return 0;
}

int cmd_identities(const CommonArgs& a) {
  RunConfig cfg = load_with_overrides(a);
  GKStructure G = realize_structure(cfg);
  IdentityOptions opt;
  opt.n_points = cfg.identities.n_points;
  opt.seed = cfg.seed;
  opt.tol_scale = cfg.tol_scale;
  opt.with_oracle = cfg.identities.with_oracle;
  opt.oracle_points = cfg.identities.oracle_points;
  return emit_report(identity_suite(G, opt), cfg);
}

int cmd_compactify(const CommonArgs& a, const std::string& against_flag,
                   const std::string& mode_flag) {
  RunConfig cfg = load_with_overrides(a);
  CompactifySpec spec = cfg.compactify.value_or(CompactifySpec{});
  if (!against_flag.empty()) spec.against = against_flag;
  if (!mode_flag.empty()) spec.mode = mode_flag;

  GKStructure test = realize_structure(cfg);
  CompactifyOptions opt;
  opt.tol_scale = cfg.tol_scale;

  if (spec.mode == "acgtf") {
    AcgtfOptions aopt;
    aopt.tol_scale = cfg.tol_scale;
    return emit_report(acgtf_check(test, spec.faces, aopt), cfg);
  }

  GKStructure ref = test;
  if (spec.reference) {
    ref = make_structure(test.polytope,
                         realize_potential(*spec.reference, test.polytope),
                         test.C);
  } else if (spec.against == "guillemin") {
    ref = make_structure(test.polytope, guillemin_potential(test.polytope),
                         test.C);
  }
  if (spec.mode == "c3") {
    C3Options c3opt;
    c3opt.tol_scale = cfg.tol_scale;
    c3opt.synthetic_offset = spec.synthetic_offset;
    return emit_report(check_c3(ref, test, c3opt), cfg);
  }
  return emit_report(check_c1_c2(ref, test, opt), cfg);
}

int cmd_deform(const CommonArgs& a, const std::vector<double>& t_flag) {
  RunConfig cfg = load_with_overrides(a);
  if (!cfg.deform)
    throw_config("ConfigMissing", "deform: section required by this subcommand");
  GKStructure base = realize_structure(cfg);
  DeformationFamily fam =
      make_family(std::move(base), cfg.deform->direction, cfg.deform->defect);
  fam.search_limit = cfg.deform->search_limit;

  std::vector<double> ts = t_flag.empty() ? cfg.deform->t_list : t_flag;
  if (ts.empty()) ts = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

  InteriorGrid grid = sample_interior(*fam.base.polytope, cfg.grid.resolution,
                                      cfg.grid.epsilon);
  std::vector<DeformScanRow> rows = deform_scan(fam, ts, grid.points);

  if (cfg.output.format == "pgm")
    throw_config("UnsupportedFormat", "deform output supports csv or json");

  if (cfg.output.format == "csv") {
    std::string out = "t,max_u_gk_drift,p_min,p_max,admissible\n";
    for (const auto& r : rows)
      out += format_double(r.t) + "," + format_double(r.max_u_gk_drift) +
             "," + format_double(r.p_min) + "," + format_double(r.p_max) +
             "," + (r.admissible ? "1" : "0") + "\n";
    write_output(out, cfg.output.path);
    return 0;
  }

  AdmissibleRange range = admissible_range(fam);
  nlohmann::ordered_json doc;
  nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json jr;
    jr["t"] = format_double(r.t);
    jr["max_u_gk_drift"] = format_double(r.max_u_gk_drift);
    jr["p_min"] = format_double(r.p_min);
    jr["p_max"] = format_double(r.p_max);
    jr["admissible"] = r.admissible;
    jrows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(jrows);
  nlohmann::ordered_json jr;
  jr["t_lo"] = format_double(range.t_lo);
  jr["t_hi"] = format_double(range.t_hi);
  jr["unbounded_lo"] = range.unbounded_lo;
  jr["unbounded_hi"] = range.unbounded_hi;
  if (!range.witness_lo.empty()) jr["witness_lo"] = range.witness_lo;
  if (!range.witness_hi.empty()) jr["witness_hi"] = range.witness_hi;
  doc["admissible_range"] = std::move(jr);
  write_output(doc.dump(2) + "\n", cfg.output.path);
  return 0;
}

int cmd_extremal(const CommonArgs& a) {
  RunConfig cfg = load_with_overrides(a);
  GKStructure G = realize_structure(cfg);
  InteriorGrid grid =
      sample_interior(*G.polytope, cfg.grid.resolution, cfg.grid.epsilon);
  ExtremalFit fit = extremal_fit(G, grid, cfg.extremal.threshold);
  nlohmann::ordered_json doc;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (int i = 0; i < fit.coeffs.size(); ++i)
    coeffs.push_back(format_double(fit.coeffs[i]));
  doc["coeffs"] = std::move(coeffs);
  doc["residual_rel"] = format_double(fit.residual_rel);
  doc["is_extremal"] = fit.is_extremal;
  write_output(doc.dump(2) + "\n", cfg.output.path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toric generalized Kähler structures: curvature, boundary "
               "conditions, and deformations"};
  app.require_subcommand(1);

  CommonArgs a_poly, a_curv, a_ident, a_comp, a_def, a_ext;
  std::string against_flag, mode_flag;
  std::vector<double> t_flag;

  add_common(app.add_subcommand("check-polytope",
                                "validate the configured polytope"),
             a_poly);
  add_common(app.add_subcommand("curvature",
                                "curvature scan over the interior grid"),
             a_curv);
  add_common(app.add_subcommand("identities",
                                "consolidated pointwise identity suite"),
             a_ident);
  CLI::App* comp = app.add_subcommand(
      "compactify", "boundary compactification checks (c1c2, c3, acgtf)");
  add_common(comp, a_comp);
  comp->add_option("--against", against_flag,
                   "reference structure: guillemin|self")
      ->check(CLI::IsMember({"guillemin", "self"}));
  comp->add_option("--mode", mode_flag, "check to run: c1c2|c3|acgtf")
      ->check(CLI::IsMember({"c1c2", "c3", "acgtf"}));
  CLI::App* def =
      app.add_subcommand("deform", "scan the C-deformation family");
  add_common(def, a_def);
  def->add_option("--t-list", t_flag, "parameter values (comma separated)")
      ->delimiter(',');
  add_common(app.add_subcommand("extremal",
                                "affine fit of the curvature over the grid"),
             a_ext);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("check-polytope")) return cmd_check_polytope(a_poly);
    if (app.got_subcommand("curvature")) return cmd_curvature(a_curv);
    if (app.got_subcommand("identities")) return cmd_identities(a_ident);
    if (app.got_subcommand("compactify"))
      return cmd_compactify(a_comp, against_flag, mode_flag);
    if (app.got_subcommand("deform")) return cmd_deform(a_def, t_flag);
    if (app.got_subcommand("extremal")) return cmd_extremal(a_ext);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == ErrorCategory::config ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;  // unreachable with require_subcommand(1)
}
