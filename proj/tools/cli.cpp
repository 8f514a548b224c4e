#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cartilab/contact_geometry.hpp"
#include "cartilab/cycle_sim.hpp"
#include "cartilab/elasticity.hpp"
#include "cartilab/error.hpp"
#include "cartilab/exudation.hpp"
#include "cartilab/friction.hpp"
#include "cartilab/lattice_layout.hpp"
#include "cartilab/presets.hpp"

namespace cartilab::cli {

namespace {

using nlohmann::json;
namespace u = units;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::string units;
  bool json = false;
};

struct Context {
  config::ToolkitConfig cfg;
  bool json = false;
  std::ostream& out;
  std::ostream& err;

  const u::UnitSystem& sys() const { return cfg.unit_system; }
};

template <u::Dimension D>
std::string show(u::Quantity<D> q, const u::UnitSystem& sys) {
  return fmt::format("{:.6g} {}", sys.display(q), sys.display_symbol(D));
}

template <u::Dimension D>
json jq(u::Quantity<D> q, const u::UnitSystem& sys) {
  return {{"value", sys.display(q)}, {"unit", sys.display_symbol(D)}};
}

void row(std::ostream& out, std::string_view label, std::string_view value) {
  out << fmt::format("  {:<28}{}\n", label, value);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& p, std::string_view bytes) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write '{}'", p.string()));
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(fmt::format("write to '{}' failed", p.string()));
}

config::ToolkitConfig resolve_config(const Globals& g) {
  config::ToolkitConfig cfg;
  std::string path = g.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CARTILAB_CONFIG"); env && *env) path = env;
  }
  cfg = path.empty() ? config::default_config() : config::load_config(path);
  if (!g.units.empty()) {
    cfg.unit_system = u::UnitSystem(u::parse_unit_mode(g.units), cfg.unit_system.gravity());
  }
  return cfg;
}

json sheet_json(const elasticity::SheetResponse& r, const u::UnitSystem& sys) {
  return {{"shape_factor", r.shape_factor},
          {"shear_modulus", jq(r.shear_modulus, sys)},
          {"apparent_modulus", jq(r.apparent_modulus, sys)},
          {"load_per_cell", jq(r.load_per_cell, sys)},
          {"deflection", jq(r.deflection, sys)},
          {"warnings", r.warnings}};
}

void print_sheet(std::ostream& out, const elasticity::SheetResponse& r,
                 const elasticity::SheetAssembly& sheet, u::Force load, const u::UnitSystem& sys) {
  out << fmt::format("sheet ({} cells, load {})\n", sheet.cell_count, show(load, sys));
  row(out, "shape factor", fmt::format("{:.6g}", r.shape_factor));
  row(out, "shear modulus", show(r.shear_modulus, sys));
  row(out, "apparent modulus", show(r.apparent_modulus, sys));
  row(out, "deflection", show(r.deflection, sys));
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
}

// design ---------------------------------------------------------------------

struct DesignArgs {
  std::optional<double> r_mm, delta_mm, pitch_mm;
};

int cmd_design(Context& ctx, const DesignArgs& a) {
  if (!a.r_mm) throw UsageError("design needs --r-mm");
  if (a.delta_mm.has_value() == a.pitch_mm.has_value()) {
    throw UsageError("design needs exactly one of --delta-mm or --pitch-mm");
  }
  const auto& sys = ctx.sys();
  const auto& cfg = ctx.cfg;
  const u::Length r = u::millimetres(*a.r_mm);
  const auto response = elasticity::analyze_sheet(cfg.assembly, cfg.sheet.design_load);
  const std::string erratum = presets::deflection_unit_erratum(cfg.assembly, cfg.sheet.design_load);

  json j = {{"command", "design"}, {"radius", jq(r, sys)}};
  std::ostringstream txt;
  row(txt, "radius", show(r, sys));

  if (a.delta_mm) {
    const u::Length delta = u::millimetres(*a.delta_mm);
    const auto pa = contact::assess(r, delta);
    const double half_deg = pa.half_angle * 180.0 / std::numbers::pi;
    row(txt, "deflection", show(delta, sys));
    row(txt, "chord half-angle", fmt::format("{:.6g} deg", half_deg));
    row(txt, "max pitch", show(pa.max_pitch, sys));
    for (const auto& w : pa.warnings) txt << "  warning: " << w << "\n";

    struct Candidate {
      const char* basis;
      u::Length pitch;
    };
    const Candidate cands[] = {{"interval", cfg.sheet.interval}, {"center_pitch", cfg.center_pitch()}};
    json verdicts = json::array();
    for (const auto& c : cands) {
      const bool ok = contact::check_pitch_condition(c.pitch, r, delta);
      verdicts.push_back({{"basis", c.basis}, {"pitch", jq(c.pitch, sys)}, {"ok", ok}});
      row(txt, fmt::format("verdict ({})", c.basis),
          fmt::format("{} pitch {}", show(c.pitch, sys), ok ? "OK" : "too wide"));
    }
    j["deflection"] = jq(delta, sys);
    j["half_angle_deg"] = half_deg;
    j["max_pitch"] = jq(pa.max_pitch, sys);
    j["verdicts"] = verdicts;
    j["warnings"] = pa.warnings;
  } else {
    const u::Length pitch = u::millimetres(*a.pitch_mm);
    const u::Length dmin = contact::min_deflection_for_pitch(pitch, r);
    const bool ok = response.deflection >= dmin;
    row(txt, "pitch", show(pitch, sys));
    row(txt, "min deflection", show(dmin, sys));
    row(txt, "verdict",
        fmt::format("sheet deflection {} {} min deflection: {}", show(response.deflection, sys),
                    ok ? ">=" : "<", ok ? "pitch OK" : "pitch too wide"));
    j["pitch"] = jq(pitch, sys);
    j["min_deflection"] = jq(dmin, sys);
    j["verdicts"] = json::array({{{"basis", "sheet_deflection"}, {"ok", ok}}});
  }
  j["sheet"] = sheet_json(response, sys);
  j["sheet"]["cells"] = cfg.assembly.cell_count;
  j["sheet"]["load"] = jq(cfg.sheet.design_load, sys);
  j["erratum"] = erratum;

  if (ctx.json) {
    ctx.out << j.dump(2) << "\n";
    return 0;
  }
  ctx.out << "pitch condition\n" << txt.str();
  print_sheet(ctx.out, response, cfg.assembly, cfg.sheet.design_load, sys);
  if (!erratum.empty()) ctx.out << "  erratum: " << erratum << "\n";
  return 0;
}

// exude ----------------------------------------------------------------------

struct LoadArgs {
  std::optional<double> kgf, kg, lb, newtons;
  std::optional<std::string> text;
};

u::Force resolve_load(const LoadArgs& a, const config::ToolkitConfig& cfg) {
  const int given = a.kgf.has_value() + a.kg.has_value() + a.lb.has_value() +
                    a.newtons.has_value() + a.text.has_value();
  if (given > 1) throw UsageError("give at most one load option");
  const auto& sys = cfg.unit_system;
  u::Force f = cfg.sheet.design_load;
  if (a.kgf) f = sys.make<u::dim::force>(*a.kgf, "kgf");
  if (a.newtons) f = u::newtons(*a.newtons);
  if (a.kg) f = u::Force::from_si(*a.kg * sys.gravity());
  if (a.lb) f = u::Force::from_si(u::pounds(*a.lb).si() * sys.gravity());
  if (a.text) {
    const auto m = u::parse_measure(*a.text, sys);
    if (m.dimension() == u::dim::mass) {
      f = u::Force::from_si(m.si() * sys.gravity());
    } else {
      f = m.as<u::dim::force>();
    }
  }
  if (!(std::isfinite(f.si()) && f.si() >= 0.0)) {
    throw DomainError(fmt::format("load must be non-negative, got {}", show(f, sys)));
  }
  return f;
}

json exudation_json(const exudation::ExudationResult& r, const u::UnitSystem& sys) {
  return {{"axial", jq(r.axial, sys)}, {"lateral", jq(r.lateral, sys)}, {"total", jq(r.total, sys)}};
}

int cmd_exude(Context& ctx, const LoadArgs& a) {
  const auto& sys = ctx.sys();
  const auto& sheet = ctx.cfg.assembly;
  const u::Force load = resolve_load(a, ctx.cfg);
  const auto response = elasticity::analyze_sheet(sheet, load);
  const auto cell = exudation::cell_exudation(sheet, load);
  const auto total = exudation::sheet_exudation(sheet, load);
  const std::string erratum = presets::deflection_unit_erratum(sheet, load);
  const bool preset = presets::is_kgf_preset(sheet);

  json j = {{"command", "exude"},
            {"load", jq(load, sys)},
            {"cells", sheet.cell_count},
            {"deflection", jq(response.deflection, sys)},
            {"per_cell", exudation_json(cell, sys)},
            {"sheet", exudation_json(total, sys)},
            {"warnings", response.warnings},
            {"erratum", erratum}};
  std::optional<exudation::ConstantReport> rep;
  if (preset) {
    rep = exudation::check_paper_constant(sheet, load);
    j["constant_check"] = {{"verdict", exudation::to_string(rep->verdict)},
                           {"rounded_apparent_modulus_kgf_cm2", rep->rounded_apparent_modulus},
                           {"symbolic_coefficient_cm3_per_kgf", rep->symbolic_coefficient},
                           {"symbolic_total_cm3", rep->symbolic_total},
                           {"symbolic_per_cell_cm3", rep->symbolic_per_cell},
                           {"pipeline_total_cm3", rep->pipeline_total},
                           {"constant_per_cell_cm3", rep->constant_per_cell},
                           {"literal_per_cell_cm3", rep->literal_per_cell},
                           {"matching_load_kgf", rep->matching_load_kgf},
                           {"constant_matches", rep->constant_matches},
                           {"literal_matches", rep->literal_matches},
                           {"erratum", rep->erratum},
                           {"note", rep->note}};
  }
  if (ctx.json) {
    ctx.out << j.dump(2) << "\n";
    return 0;
  }
  auto& out = ctx.out;
  out << fmt::format("exudation ({} cells, load {})\n", sheet.cell_count, show(load, sys));
  row(out, "deflection", show(response.deflection, sys));
  row(out, "per cell axial", show(cell.axial, sys));
  row(out, "per cell lateral", show(cell.lateral, sys));
  row(out, "per cell total", show(cell.total, sys));
  row(out, "sheet axial", show(total.axial, sys));
  row(out, "sheet lateral", show(total.lateral, sys));
  row(out, "sheet total", show(total.total, sys));
  for (const auto& w : response.warnings) out << "  warning: " << w << "\n";
  if (!erratum.empty()) out << "  erratum: " << erratum << "\n";
  if (rep) {
    out << "closed-form constant check\n";
    row(out, "verdict", exudation::to_string(rep->verdict));
    row(out, "E_ap as rounded", fmt::format("{:.1f} kgf/cm2", rep->rounded_apparent_modulus));
    row(out, "symbolic sheet total", fmt::format("{:.6g} cm3", rep->symbolic_total));
    row(out, "17/(21x) per cell", fmt::format("{:.6g} cm3", rep->constant_per_cell));
    row(out, "symbolic per cell", fmt::format("{:.6g} cm3", rep->symbolic_per_cell));
    row(out, "agreeing load", fmt::format("{:.6g} kgf", rep->matching_load_kgf));
    if (!rep->note.empty()) out << "  note: " << rep->note << "\n";
  }
  return 0;
}

// friction -------------------------------------------------------------------

struct FrictionArgs {
  std::string trials;
  std::string csv_out;
  std::string json_out;
};

int cmd_friction(Context& ctx, const FrictionArgs& a) {
  std::filesystem::path path = a.trials;
  if (path.empty()) path = ctx.cfg.paths.friction_data;
  if (path.empty()) path = std::filesystem::path(CARTILAB_DEFAULT_DATA_DIR) / "data/table1_friction.csv";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::vector<friction::FrictionTrial> trials;
  try {
    trials = friction::parse_trials_csv(in, ctx.cfg.friction_increments);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  const auto rows = friction::build_table(trials);
  if (!a.csv_out.empty()) write_file(a.csv_out, friction::to_csv(rows));
  const json j = friction::to_json(rows);
  if (!a.json_out.empty()) write_file(a.json_out, j.dump(2) + "\n");
  if (ctx.json) {
    ctx.out << json{{"command", "friction"}, {"rows", j}}.dump(2) << "\n";
    return 0;
  }
  const auto& sys = ctx.sys();
  const std::string msym = sys.display_symbol(u::dim::mass);
  ctx.out << fmt::format("{:<28}{:>12}{:>12}  {}\n", "condition", fmt::format("N [{}]", msym),
                         fmt::format("W [{}]", msym), "mu");
  for (const auto& r : rows) {
    std::string mu = r.rendered();
    if (r.mu_uncertainty) mu += fmt::format(" +/- {:.3f}", *r.mu_uncertainty);
    ctx.out << fmt::format("{:<28}{:>12.6g}{:>12.6g}  {}\n", r.condition, sys.display(r.normal_load),
                           sys.display(r.slip_weight), mu);
  }
  return 0;
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
  std::string protocol;
  std::string csv_out;
};

cycle::ProtocolFile load_protocol(const config::ToolkitConfig& cfg, const std::filesystem::path& p) {
  json doc;
  try {
    doc = json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", p.string(), e.what()));
  }
  try {
    return cycle::parse_protocol(doc, cfg.assembly, cfg.sim.reservoir, cfg.sim.params,
                                 cfg.calibration_endpoints(), cfg.unit_system);
  } catch (const Error& e) {
    throw ParseError(fmt::format("{}: {}", p.string(), e.what()));
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}: {}", p.string(), e.what()));
  }
}

int cmd_simulate(Context& ctx, const SimulateArgs& a) {
  if (a.protocol.empty()) throw UsageError("simulate needs a protocol JSON file");
  const auto& sys = ctx.sys();
  const auto pf = load_protocol(ctx.cfg, a.protocol);
  const auto series = cycle::run_protocol(pf.protocol, pf.initial, pf.calibration);
  const std::string vsym = sys.display_symbol(u::dim::volume);
  const std::string csv = cycle::series_to_csv(series, sys, vsym);

  json loads = json::array();
  std::vector<std::string> lines;
  for (const auto& r : series) {
    if (r.action != "load") continue;
    const auto& step = std::get<cycle::LoadStep>(pf.protocol.steps[r.index - 1]);
    loads.push_back({{"step", r.index},
                     {"mass", jq(step.mass, sys)},
                     {"exuded", jq(r.exuded, sys)},
                     {"mu_est", r.mu_estimate}});
    lines.push_back(fmt::format("load {} ({}) at step {}: exuded {}, mu {:.4f}", loads.size(),
                                show(step.mass, sys), r.index, show(r.exuded, sys),
                                r.mu_estimate));
  }
  if (!a.csv_out.empty()) write_file(a.csv_out, csv);

  if (ctx.json) {
    json j = cycle::series_to_json(series, sys, vsym);
    j["command"] = "simulate";
    j["description"] = pf.description;
    j["loads"] = loads;
    j["film_threshold"] = jq(pf.calibration.film_threshold, sys);
    ctx.out << j.dump(2) << "\n";
    return 0;
  }
  // Without --csv the series is the output and the summary is commentary.
  std::ostream& summary = a.csv_out.empty() ? ctx.err : ctx.out;
  if (a.csv_out.empty()) ctx.out << csv;
  if (!pf.description.empty()) summary << "summary: " << pf.description << "\n";
  for (const auto& l : lines) summary << "summary: " << l << "\n";
  return 0;
}

// layout ---------------------------------------------------------------------

struct LayoutArgs {
  std::string surface = "flat";
  std::string format = "csv";
  std::string out;
  std::optional<double> width_mm, length_mm, gap_mm, pitch_mm, hole_mm, radius_mm, cap_deg,
      delta_mm;
  bool verify = false;
};

int cmd_layout(Context& ctx, const LayoutArgs& a) {
  const auto& cfg = ctx.cfg;
  const auto& sys = ctx.sys();
  if (a.gap_mm && a.pitch_mm) throw UsageError("give --gap-mm or --pitch-mm, not both");
  const auto fmt_kind = layout::parse_export_format(a.format);

  layout::HoleSpec hole{cfg.assembly.cell.hole_side, cfg.assembly.cell.height};
  if (a.hole_mm) hole.side = u::millimetres(*a.hole_mm);
  u::Length pitch = cfg.sheet.interval_mode == config::IntervalMode::gap
                        ? cfg.sheet.interval + hole.side
                        : cfg.sheet.interval;
  if (a.gap_mm) pitch = u::millimetres(*a.gap_mm) + hole.side;
  if (a.pitch_mm) pitch = u::millimetres(*a.pitch_mm);

  layout::Layout lay;
  if (a.surface == "flat") {
    lay = layout::flat_layout(a.width_mm ? u::millimetres(*a.width_mm) : cfg.sheet.width,
                              a.length_mm ? u::millimetres(*a.length_mm) : cfg.sheet.length, pitch,
                              hole);
  } else if (a.surface == "cap") {
    if (fmt_kind == layout::ExportFormat::stl) {
      throw DomainError("STL export of a spherical cap is unsupported");
    }
    const double deg = a.cap_deg ? *a.cap_deg : cfg.sheet.cap_half_angle_deg;
    lay = layout::spherical_cap_layout(a.radius_mm ? u::millimetres(*a.radius_mm) : cfg.sheet.cap_radius,
                                       deg * std::numbers::pi / 180.0, pitch, hole);
  } else {
    throw UsageError(fmt::format("unknown surface '{}' (flat, cap)", a.surface));
  }

  std::optional<layout::CoverageReport> cov;
  if (a.verify) {
    if (!a.delta_mm) throw UsageError("--verify needs --delta-mm");
    cov = layout::verify_coverage(lay, u::millimetres(*a.delta_mm));
  }
  const std::string bytes = layout::export_layout(lay, fmt_kind);

  json rep = {{"command", "layout"},
              {"surface", a.surface},
              {"format", a.format},
              {"holes", lay.holes.size()},
              {"pitch", jq(pitch, sys)},
              {"hole_side", jq(hole.side, sys)}};
  if (lay.is_flat()) {
    rep["rows"] = lay.rows;
    rep["cols"] = lay.cols;
  }
  if (!a.out.empty()) rep["output"] = a.out;
  if (cov) {
    rep["coverage"] = {{"applicable", cov->applicable},
                       {"passed", cov->passed},
                       {"required_radius", jq(cov->required_radius, sys)},
                       {"worst_radius", jq(cov->worst_radius, sys)},
                       {"samples", cov->samples},
                       {"samples_per_mm2", cov->samples_per_mm2},
                       {"note", cov->note}};
  }

  std::ostream* report = &ctx.out;
  if (a.out.empty()) {
    ctx.out << bytes;
    report = &ctx.err;
  } else {
    write_file(a.out, bytes);
  }
  if (ctx.json) {
    *report << rep.dump(2) << "\n";
    return 0;
  }
  *report << fmt::format("layout: {} holes on {} surface, pitch {}", lay.holes.size(), a.surface,
                         show(pitch, sys));
  if (lay.is_flat()) *report << fmt::format(" ({} x {})", lay.cols, lay.rows);
  *report << "\n";
  if (!a.out.empty()) *report << "wrote " << a.out << "\n";
  if (cov) {
    if (!cov->applicable) {
      *report << "coverage: " << cov->note << "\n";
    } else {
      *report << fmt::format("coverage: {} (worst empty disc {}, allowed {})\n",
                             cov->passed ? "PASS" : "FAIL", show(cov->worst_radius, sys),
                             show(cov->required_radius, sys));
    }
  }
  return 0;
}

// reproduce-paper --------------------------------------------------------------

int cmd_reproduce(Context& ctx, const std::string& data_dir) {
  const auto checks = reproduce(ctx.cfg, data_dir.empty() ? CARTILAB_DEFAULT_DATA_DIR : data_dir);
  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  if (ctx.json) {
    ctx.out << json{{"command", "reproduce-paper"}, {"checks", arr}, {"passed", all}}.dump(2)
            << "\n";
  } else {
    for (const auto& c : checks) {
      ctx.out << fmt::format("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    }
    ctx.out << fmt::format("{} of {} checks passed\n",
                           std::count_if(checks.begin(), checks.end(),
                                         [](const Check& c) { return c.passed; }),
                           checks.size());
  }
  return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartilage-sheet design, exudation, friction and layout toolkit", "cartilab"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "Config file (falls back to $CARTILAB_CONFIG)");
  app.add_option("--units", g.units, "Display units")->check(CLI::IsMember({"paper", "si"}));
  app.add_flag("--json", g.json, "JSON output");

  DesignArgs design;
  auto* sd = app.add_subcommand("design", "Pitch condition and sheet stiffness");
  sd->add_option("--r-mm", design.r_mm, "Radius of curvature [mm]");
  sd->add_option("--delta-mm", design.delta_mm, "Deflection [mm]");
  sd->add_option("--pitch-mm", design.pitch_mm, "Insert pitch [mm]");

  LoadArgs load;
  auto* se = app.add_subcommand("exude", "Fluid exudation under a load");
  se->add_option("--load-kgf", load.kgf, "Total load [kgf]");
  se->add_option("--load-n", load.newtons, "Total load [N]");
  se->add_option("--load-kg", load.kg, "Mass on the sheet [kg]");
  se->add_option("--load-lb", load.lb, "Mass on the sheet [lb]");
  se->add_option("--load", load.text, "Load with unit, e.g. \"6.8 kgf\" or \"15 lb\"");

  FrictionArgs fr;
  auto* sf = app.add_subcommand("friction", "Friction table from pull-to-slip trials");
  sf->add_option("trials", fr.trials, "Trials CSV (default: paths.friction_data)");
  sf->add_option("--csv-out", fr.csv_out, "Write the table as CSV");
  sf->add_option("--json-out", fr.json_out, "Write the table as JSON");

  SimulateArgs sim;
  auto* ss = app.add_subcommand("simulate", "Run a load/wipe/unload protocol");
  ss->add_option("protocol", sim.protocol, "Protocol JSON");
  ss->add_option("--csv", sim.csv_out, "Write the series to this file instead of stdout");

  LayoutArgs lay;
  auto* sl = app.add_subcommand("layout", "Insert hole layouts and fabrication files");
  sl->add_option("--surface", lay.surface, "flat or cap")->check(CLI::IsMember({"flat", "cap"}));
  sl->add_option("--format", lay.format, "csv, json or stl");
  sl->add_option("--out", lay.out, "Output file (default stdout)");
  sl->add_option("--width-mm", lay.width_mm, "Sheet width [mm]");
  sl->add_option("--length-mm", lay.length_mm, "Sheet length [mm]");
  sl->add_option("--gap-mm", lay.gap_mm, "Edge-to-edge gap between holes [mm]");
  sl->add_option("--pitch-mm", lay.pitch_mm, "Centre-to-centre pitch [mm]");
  sl->add_option("--hole-mm", lay.hole_mm, "Hole side [mm]");
  sl->add_option("--radius-mm", lay.radius_mm, "Cap radius [mm]");
  sl->add_option("--cap-deg", lay.cap_deg, "Cap half-angle [deg]");
  sl->add_flag("--verify", lay.verify, "Check contact coverage (caps)");
  sl->add_option("--delta-mm", lay.delta_mm, "Design deflection for --verify [mm]");

  std::string data_dir;
  auto* sr = app.add_subcommand("reproduce-paper", "Run the full chain and print a checklist");
  sr->add_option("--data-dir", data_dir, "Directory holding data/ and configs/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Context ctx{resolve_config(g), g.json, out, err};
    if (sd->parsed()) return cmd_design(ctx, design);
    if (se->parsed()) return cmd_exude(ctx, load);
    if (sf->parsed()) return cmd_friction(ctx, fr);
    if (ss->parsed()) return cmd_simulate(ctx, sim);
    if (sl->parsed()) return cmd_layout(ctx, lay);
    if (sr->parsed()) return cmd_reproduce(ctx, data_dir);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cartilab::cli
