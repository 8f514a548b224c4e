// The reproduction walkthrough: each check recomputes one published result
// from the toolkit and compares it to the number or ordering reported.

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

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
#include "cli.hpp"

namespace cartilab::cli {

namespace {

namespace u = units;

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

std::filesystem::path pick(const std::filesystem::path& configured,
                           const std::filesystem::path& fallback) {
  return configured.empty() ? fallback : configured;
}

cycle::ProtocolFile protocol_from(const config::ToolkitConfig& cfg,
                                  const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", p.string()));
  const auto doc = nlohmann::json::parse(in);
  return cycle::parse_protocol(doc, cfg.assembly, cfg.sim.reservoir, cfg.sim.params,
                               cfg.calibration_endpoints(), cfg.unit_system);
}

std::vector<double> cm3(const std::vector<u::Volume>& v) {
  std::vector<double> out;
  for (auto x : v) out.push_back(u::in_cm3(x));
  return out;
}

// Runs `fn`, turning any toolkit error into a failed check.
template <typename Fn>
Check guarded(std::string name, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {std::move(name), false, fmt::format("error: {}", e.what())};
  }
}

}  // namespace

std::vector<Check> reproduce(const config::ToolkitConfig& cfg,
                             const std::filesystem::path& data_dir) {
  std::vector<Check> checks;
  const auto preset = presets::kgf_assembly();
  const u::Force w_ref = u::kilograms_force(presets::kReferenceLoadKgf);

  checks.push_back(guarded("shape factor chain", [&] {
    const double s = elasticity::shape_factor(preset.cell);
    const auto g = elasticity::shear_modulus(preset.material.young_modulus, 0.5);
    const auto eap = elasticity::apparent_modulus(g, s);
    const double eap_kgf = u::in_kgf_per_cm2(eap);
    const bool ok = rel_close(s, 0.25, 1e-12) && rel_close(u::in_kgf_per_cm2(g), 1.0, 1e-12) &&
                    rel_close(eap_kgf, 4.205625, 1e-12) && rel_close(eap_kgf, 4.2, 2e-3);
    return Check{"shape factor chain", ok,
                 fmt::format("S = {:.6g}, G = {:.6g} kgf/cm2, E_ap = {:.7g} kgf/cm2", s,
                             u::in_kgf_per_cm2(g), eap_kgf)};
  }));

  checks.push_back(guarded("deflection of the nine-cell sheet", [&] {
    const auto d = elasticity::sheet_deflection(preset, w_ref);
    const double v = u::in_cm(d);
    const std::string erratum = presets::deflection_unit_erratum(preset, w_ref);
    return Check{"deflection of the nine-cell sheet", v >= 0.898 && v <= 0.900 && !erratum.empty(),
                 fmt::format("delta = {:.5f} cm at 6.8 kgf; erratum note {}", v,
                             erratum.empty() ? "missing" : "emitted")};
  }));

  checks.push_back(guarded("exudation constant", [&] {
    const auto rep = exudation::check_paper_constant(preset, w_ref);
    const double want_total = 17.0 / 21.0;
    const double want_cell = 17.0 / 189.0;
    const bool ok = rel_close(rep.symbolic_total, want_total, 5e-3) &&
                    rel_close(rep.symbolic_per_cell, want_cell, 5e-3) &&
                    rep.verdict == exudation::ConstantVerdict::matches_at_reference_load_only;
    const auto other = exudation::check_paper_constant(preset, u::kilograms_force(3.629));
    return Check{"exudation constant", ok && !other.literal_matches && !other.constant_matches,
                 fmt::format("sheet total {:.6f} cm3 (17/21 = {:.6f}), per cell {:.6f} cm3; "
                             "verdict {}; at 8 lb: {}",
                             rep.symbolic_total, want_total, rep.symbolic_per_cell,
                             exudation::to_string(rep.verdict), exudation::to_string(other.verdict))};
  }));

  checks.push_back(guarded("friction table", [&] {
    const auto path = pick(cfg.paths.friction_data, data_dir / "data" / "table1_friction.csv");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
    const auto trials = friction::parse_trials_csv(in, cfg.friction_increments);
    const auto rows = friction::build_table(trials);
    const auto find = [&](std::string_view name) -> const friction::FrictionRow& {
      for (const auto& r : rows) {
        if (r.condition == name) return r;
      }
      throw Error(fmt::format("condition '{}' missing", name));
    };
    const auto& none = find("no film");
    const auto& film = find("film");
    const auto& fluid = find("film + fluid");
    const auto& sponge = find("film + fluid + sponge");
    const bool ok = none.censored && none.mu >= 0.5 && std::abs(film.mu - 0.079) <= 1e-3 &&
                    std::abs(fluid.mu - 0.064) <= 1e-3 && std::abs(sponge.mu - 0.053) <= 1e-3 &&
                    none.mu > film.mu && film.mu > fluid.mu && fluid.mu > sponge.mu;
    return Check{"friction table", ok,
                 fmt::format("no film {}, film {}, film + fluid {}, film + fluid + sponge {}",
                             none.rendered(), film.rendered(), fluid.rendered(),
                             sponge.rendered())};
  }));

  checks.push_back(guarded("pitch condition", [&] {
    const auto mp = contact::max_pitch(u::millimetres(3.0), u::millimetres(1.0));
    const bool ok = contact::check_pitch_condition(u::millimetres(2.0), u::millimetres(3.0),
                                                   u::millimetres(1.0));
    return Check{"pitch condition", ok,
                 fmt::format("r = 3 mm, delta = 1 mm: max pitch {:.4f} mm, 2 mm inserts {}",
                             u::in_mm(mp), ok ? "OK" : "too wide")};
  }));

  checks.push_back(guarded("repeated loading without a base sheet", [&] {
    const auto pf = protocol_from(
        cfg, pick(cfg.paths.protocol_nobase, data_dir / "data" / "protocols" / "paper_5cycles_nobase.json"));
    const auto series = cycle::run_protocol(pf.protocol, pf.initial, pf.calibration);
    const auto ex = cycle::load_exudations(series);
    bool decreasing = ex.size() >= 2;
    for (std::size_t i = 1; i < ex.size(); ++i) decreasing = decreasing && ex[i] < ex[i - 1];
    return Check{"repeated loading without a base sheet", decreasing,
                 fmt::format("per-cycle exudation [{:.5f}] cm3", fmt::join(cm3(ex), ", "))};
  }));

  checks.push_back(guarded("repeated loading with a base sheet", [&] {
    const auto pf = protocol_from(
        cfg, pick(cfg.paths.protocol_base, data_dir / "data" / "protocols" / "paper_5cycles_base.json"));
    const auto series = cycle::run_protocol(pf.protocol, pf.initial, pf.calibration);
    const auto ex = cycle::load_exudations(series);
    const bool ok = ex.size() >= 2 && ex.back() >= 0.8 * ex.front();
    return Check{"repeated loading with a base sheet", ok,
                 fmt::format("per-cycle exudation [{:.5f}] cm3", fmt::join(cm3(ex), ", "))};
  }));

  checks.push_back(guarded("heavier load after depletion", [&] {
    auto pf = protocol_from(
        cfg, pick(cfg.paths.protocol_nobase, data_dir / "data" / "protocols" / "paper_5cycles_nobase.json"));
    pf.protocol.steps.push_back(cycle::LoadStep{u::pounds(presets::kHeavyDumbbellLb)});
    const auto series = cycle::run_protocol(pf.protocol, pf.initial, pf.calibration);
    const auto ex = cycle::load_exudations(series);
    const bool ok = ex.size() >= 2 && ex.back() > ex[ex.size() - 2];
    return Check{"heavier load after depletion", ok,
                 fmt::format("8 lb: {:.5f} cm3, then 15 lb: {:.5f} cm3",
                             u::in_cm3(ex[ex.size() - 2]), u::in_cm3(ex.back()))};
  }));

  checks.push_back(guarded("nine-hole flat layout", [&] {
    const layout::HoleSpec hole{u::millimetres(2.0), u::millimetres(6.0)};
    const auto lay = layout::flat_layout(u::millimetres(14.0), u::millimetres(14.0),
                                         u::millimetres(4.0), hole);
    return Check{"nine-hole flat layout", lay.holes.size() == 9,
                 fmt::format("14 x 14 mm, 2 mm holes, 2 mm gaps: {} holes ({} x {})",
                             lay.holes.size(), lay.cols, lay.rows)};
  }));

  checks.push_back(guarded("curved-sheet contact coverage", [&] {
    const layout::HoleSpec hole{u::millimetres(2.0), u::millimetres(6.0)};
    const auto lay = layout::spherical_cap_layout(u::millimetres(20.0), std::numbers::pi / 3,
                                                  u::millimetres(4.0), hole);
    const auto rep = layout::verify_coverage(lay, u::millimetres(1.0));
    return Check{"curved-sheet contact coverage", rep.passed,
                 fmt::format("R = 20 mm, 60 deg cap, {} holes: {}", lay.holes.size(), rep.note)};
  }));

  return checks;
}

}  // namespace cartilab::cli
