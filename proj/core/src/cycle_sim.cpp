#include "cartilab/cycle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "cartilab/error.hpp"
#include "cartilab/exudation.hpp"

namespace cartilab::cycle {

namespace {

void require_fraction(double v, const char* what) {
  if (!(std::isfinite(v) && v >= 0.0 && v <= 1.0)) {
    throw DomainError(fmt::format("{} must lie in [0, 1], got {}", what, v));
  }
}

void require_non_negative(Volume v, const char* what) {
  if (!(std::isfinite(v.si()) && v.si() >= 0.0)) {
    throw DomainError(fmt::format("{} must be non-negative", what));
  }
}

// Moves up to `amount` from `from` to `to`, never overdrawing `from`.
Volume transfer(Volume& from, Volume& to, Volume amount) {
  const Volume moved = std::clamp(amount, Volume{}, from);
  from -= moved;
  to += moved;
  return moved;
}

// Fill `level` towards `capacity` by `amount`, taking from `source`.
void refill(Volume& level, Volume capacity, Volume& source, Volume amount) {
  const Volume room = std::max(Volume{}, capacity - level);
  const Volume wanted = std::min(amount, room);
  const Volume moved = std::min(wanted, source);
  if (!(moved.si() > 0.0)) return;
  source -= moved;
  level = std::min(capacity, level + moved);
}

}  // namespace

Volume ReservoirState::total_fluid() const {
  return insert_fluid + base_fluid + surface_film + capsule_pool + wiped_total;
}

void ReservoirState::validate() const {
  require_non_negative(insert_fluid, "insert fluid");
  require_non_negative(insert_capacity, "insert capacity");
  require_non_negative(base_fluid, "base fluid");
  require_non_negative(base_capacity, "base capacity");
  require_non_negative(surface_film, "surface film");
  require_non_negative(capsule_pool, "capsule pool");
  require_non_negative(wiped_total, "wiped total");
  if (insert_fluid > insert_capacity) throw DomainError("insert fluid exceeds insert capacity");
  if (base_fluid > base_capacity) throw DomainError("base fluid exceeds base capacity");
  if (!has_base_sheet && (base_fluid.si() != 0.0 || base_capacity.si() != 0.0)) {
    throw DomainError("base terms must be zero without a base sheet");
  }
}

void SimParams::validate() const {
  require_fraction(efficiency, "eta");
  require_fraction(replenish, "rho");
  require_fraction(replenish_direct, "rho_direct");
}

std::string describe(const Step& step) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LoadStep>) {
          return fmt::format("load {:g} kg", s.mass.si());
        } else if constexpr (std::is_same_v<T, WipeStep>) {
          return "wipe";
        } else {
          return "unload";
        }
      },
      step);
}

Volume insert_capacity(const elasticity::SheetAssembly& sheet, double porosity) {
  require_fraction(porosity, "porosity");
  const auto& c = sheet.cell;
  return static_cast<double>(sheet.cell_count) * (c.hole_side * c.hole_side * c.height) * porosity;
}

Volume base_capacity(const elasticity::SheetAssembly& sheet, double porosity, Length thickness) {
  require_fraction(porosity, "porosity");
  if (!(thickness.si() >= 0.0)) throw DomainError("base thickness must be non-negative");
  const auto& c = sheet.cell;
  return static_cast<double>(sheet.cell_count) * (c.outer_side * c.outer_side * thickness) *
         porosity;
}

ReservoirState initial_state(const elasticity::SheetAssembly& sheet, const ReservoirSetup& setup) {
  sheet.validate();
  require_non_negative(setup.capsule_pool, "capsule pool");
  ReservoirState s;
  s.insert_capacity = insert_capacity(sheet, setup.porosity);
  s.insert_fluid = s.insert_capacity;
  s.has_base_sheet = setup.base_sheet;
  if (setup.base_sheet) {
    s.base_capacity = base_capacity(sheet, setup.porosity, setup.base_thickness);
    s.base_fluid = s.base_capacity;
  }
  s.capsule_pool = setup.capsule_pool;
  return s;
}

StepResult step_load(const ReservoirState& state, Mass mass, const Protocol& protocol) {
  const units::Force load = units::mass_to_load(mass, protocol.unit_system);
  StepResult r{state, Volume{}};
  if (!(load.si() > 0.0) || !(state.insert_capacity.si() > 0.0)) return r;
  const Volume demand =
      protocol.params.efficiency * exudation::sheet_exudation(protocol.assembly, load).total;
  const double squeeze = std::min(1.0, demand / state.insert_capacity);
  r.exuded = transfer(r.state.insert_fluid, r.state.surface_film, state.insert_fluid * squeeze);
  return r;
}

ReservoirState step_wipe(const ReservoirState& state) {
  ReservoirState s = state;
  s.wiped_total += s.surface_film;
  s.surface_film = Volume{};
  return s;
}

ReservoirState step_unload(const ReservoirState& state, const Protocol& protocol) {
  ReservoirState s = state;
  const Volume deficit = s.insert_capacity - s.insert_fluid;
  if (s.has_base_sheet) {
    refill(s.base_fluid, s.base_capacity, s.capsule_pool, s.base_capacity - s.base_fluid);
    refill(s.insert_fluid, s.insert_capacity, s.base_fluid, protocol.params.replenish * deficit);
  } else {
    refill(s.insert_fluid, s.insert_capacity, s.capsule_pool,
           protocol.params.replenish_direct * deficit);
  }
  return s;
}

void Calibration::validate() const {
  if (!(std::isfinite(mu_dry) && std::isfinite(mu_wet) && mu_wet >= 0.0)) {
    throw DomainError("friction calibration must be finite and non-negative");
  }
  if (!(mu_dry > mu_wet)) {
    throw DomainError(fmt::format("calibration needs mu_dry > mu_wet, got {} <= {}", mu_dry, mu_wet));
  }
  require_non_negative(film_threshold, "film threshold");
}

double friction_estimate(const ReservoirState& state, const Calibration& calibration) {
  calibration.validate();
  const Volume film = state.surface_film;
  if (!(film.si() > 0.0)) return calibration.mu_dry;
  if (film >= calibration.film_threshold) return calibration.mu_wet;
  const double t = film / calibration.film_threshold;
  return calibration.mu_dry + t * (calibration.mu_wet - calibration.mu_dry);
}

Calibration default_calibration(const Protocol& protocol, const ReservoirState& full) {
  ReservoirState saturated = full;
  saturated.insert_fluid = saturated.insert_capacity;
  Calibration c;
  c.film_threshold = step_load(saturated, units::pounds(8.0), protocol).exuded;
  return c;
}

std::vector<StepRecord> run_protocol(const Protocol& protocol, const ReservoirState& initial,
                                     const Calibration& calibration) {
  protocol.assembly.validate();
  protocol.params.validate();
  calibration.validate();
  initial.validate();
  const Volume total = initial.total_fluid();

  std::vector<StepRecord> series;
  series.reserve(protocol.steps.size());
  ReservoirState s = initial;
  for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
    StepRecord rec;
    rec.index = i + 1;
    const Step& step = protocol.steps[i];
    if (const auto* load = std::get_if<LoadStep>(&step)) {
      auto r = step_load(s, load->mass, protocol);
      s = r.state;
      rec.exuded = r.exuded;
      rec.action = "load";
    } else if (std::holds_alternative<WipeStep>(step)) {
      s = step_wipe(s);
      rec.action = "wipe";
    } else {
      s = step_unload(s, protocol);
      rec.action = "unload";
    }
    const double drift = std::abs(s.total_fluid().si() - total.si());
    if (drift > 1e-12 * std::max(total.si(), 1e-30)) {
      throw Error(fmt::format("fluid not conserved at step {} ({})", rec.index, rec.action));
    }
    s.validate();
    rec.state = s;
    rec.mu_estimate = friction_estimate(s, calibration);
    series.push_back(std::move(rec));
  }
  return series;
}

std::vector<Volume> load_exudations(const std::vector<StepRecord>& series) {
  std::vector<Volume> out;
  for (const auto& r : series) {
    if (r.action == "load") out.push_back(r.exuded);
  }
  return out;
}

std::string series_to_csv(const std::vector<StepRecord>& series, const units::UnitSystem& sys,
                          std::string_view volume_unit) {
  std::string out =
      "step,action,insert_fluid,base_fluid,surface_film,capsule_pool,wiped_total,exuded,mu_est\n";
  auto v = [&](Volume q) { return sys.express(q, volume_unit); };
  for (const auto& r : series) {
    const auto& s = r.state;
    out += fmt::format("{},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.6f}\n", r.index,
                       r.action, v(s.insert_fluid), v(s.base_fluid), v(s.surface_film),
                       v(s.capsule_pool), v(s.wiped_total), v(r.exuded), r.mu_estimate);
  }
  return out;
}

nlohmann::json series_to_json(const std::vector<StepRecord>& series, const units::UnitSystem& sys,
                              std::string_view volume_unit) {
  auto v = [&](Volume q) { return sys.express(q, volume_unit); };
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& r : series) {
    const auto& s = r.state;
    steps.push_back({{"step", r.index},
                     {"action", r.action},
                     {"insert_fluid", v(s.insert_fluid)},
                     {"base_fluid", v(s.base_fluid)},
                     {"surface_film", v(s.surface_film)},
                     {"capsule_pool", v(s.capsule_pool)},
                     {"wiped_total", v(s.wiped_total)},
                     {"exuded", v(r.exuded)},
                     {"mu_est", r.mu_estimate}});
  }
  return {{"volume_unit", std::string(volume_unit)}, {"steps", std::move(steps)}};
}

// Protocol files ------------------------------------------------------------

namespace {

void reject_unknown(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!obj.is_object()) throw ParseError(fmt::format("'{}' must be an object", where));
  const std::set<std::string_view> keys(allowed);
  for (const auto& [k, _] : obj.items()) {
    if (!keys.contains(k)) throw ParseError(fmt::format("unknown key '{}' in {}", k, where));
  }
}

double number(const nlohmann::json& obj, const char* key, std::string_view where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(fmt::format("{}.{} must be a number", where, key));
  return v.get<double>();
}

template <units::Dimension D>
units::Quantity<D> measure(const nlohmann::json& obj, const char* key, std::string_view where,
                           const units::UnitSystem& sys) {
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw ParseError(fmt::format("{}.{} must be a string with a unit, e.g. \"2 mm\"", where, key));
  }
  return units::parse_measure(v.get<std::string>(), sys).as<D>();
}

bool flag(const nlohmann::json& obj, const char* key, std::string_view where) {
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ParseError(fmt::format("{}.{} must be true or false", where, key));
  return v.get<bool>();
}

Step parse_step(const nlohmann::json& j, std::size_t n, const units::UnitSystem& sys) {
  const std::string where = fmt::format("steps[{}]", n);
  if (!j.is_object() || j.size() != 1) {
    throw ParseError(fmt::format("{} must be an object with exactly one key", where));
  }
  const std::string key = j.begin().key();
  const auto& val = j.begin().value();
  auto mass_value = [&] {
    if (!val.is_number() || val.get<double>() < 0.0) {
      throw ParseError(fmt::format("{}.{} must be a non-negative number", where, key));
    }
    return val.get<double>();
  };
  if (key == "load_lb") return LoadStep{units::pounds(mass_value())};
  if (key == "load_kg") return LoadStep{units::kilograms(mass_value())};
  // A kgf load names the mass whose weight it is under the configured gravity.
  if (key == "load_kgf") {
    return LoadStep{units::kilograms(mass_value() * units::kStandardGravity / sys.gravity())};
  }
  if (key == "wipe" || key == "unload") {
    if (!val.is_boolean() || !val.get<bool>()) {
      throw ParseError(fmt::format("{}.{} must be true", where, key));
    }
    if (key == "wipe") return WipeStep{};
    return UnloadStep{};
  }
  throw ParseError(fmt::format("unknown step '{}' in {}", key, where));
}

}  // namespace

ProtocolFile parse_protocol(const nlohmann::json& doc, const elasticity::SheetAssembly& sheet,
                            const ReservoirSetup& setup, const SimParams& params,
                            const Calibration& endpoints, const units::UnitSystem& sys) {
  reject_unknown(doc, {"description", "assembly", "reservoir", "params", "calibration", "steps"},
                 "protocol");
  ProtocolFile out;
  out.protocol.assembly = sheet;
  out.protocol.params = params;
  out.protocol.unit_system = sys;
  ReservoirSetup res = setup;

  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw ParseError("description must be a string");
    out.description = doc["description"].get<std::string>();
  }
  if (doc.contains("assembly")) {
    const auto& a = doc["assembly"];
    reject_unknown(a,
                   {"outer_side", "hole_side", "height", "count", "young_modulus",
                    "poisson_ratio", "shore_a"},
                   "assembly");
    auto& s = out.protocol.assembly;
    if (a.contains("outer_side")) s.cell.outer_side = measure<units::dim::length>(a, "outer_side", "assembly", sys);
    if (a.contains("hole_side")) s.cell.hole_side = measure<units::dim::length>(a, "hole_side", "assembly", sys);
    if (a.contains("height")) s.cell.height = measure<units::dim::length>(a, "height", "assembly", sys);
    if (a.contains("count")) {
      const double c = number(a, "count", "assembly");
      if (c < 1 || c != std::floor(c)) throw ParseError("assembly.count must be a positive integer");
      s.cell_count = static_cast<int>(c);
    }
    if (a.contains("young_modulus")) {
      s.material.young_modulus = measure<units::dim::pressure>(a, "young_modulus", "assembly", sys);
    }
    if (a.contains("poisson_ratio")) s.material.poisson_ratio = number(a, "poisson_ratio", "assembly");
    if (a.contains("shore_a")) s.material.shore_a = number(a, "shore_a", "assembly");
  }
  out.protocol.assembly.validate();

  if (doc.contains("reservoir")) {
    const auto& r = doc["reservoir"];
    reject_unknown(r, {"base_sheet", "porosity", "base_thickness", "capsule_pool"}, "reservoir");
    if (r.contains("base_sheet")) res.base_sheet = flag(r, "base_sheet", "reservoir");
    if (r.contains("porosity")) res.porosity = number(r, "porosity", "reservoir");
    if (r.contains("base_thickness")) {
      res.base_thickness = measure<units::dim::length>(r, "base_thickness", "reservoir", sys);
    }
    if (r.contains("capsule_pool")) {
      res.capsule_pool = measure<units::dim::volume>(r, "capsule_pool", "reservoir", sys);
    }
  }
  if (doc.contains("params")) {
    const auto& p = doc["params"];
    reject_unknown(p, {"eta", "rho", "rho_direct"}, "params");
    if (p.contains("eta")) out.protocol.params.efficiency = number(p, "eta", "params");
    if (p.contains("rho")) out.protocol.params.replenish = number(p, "rho", "params");
    if (p.contains("rho_direct")) out.protocol.params.replenish_direct = number(p, "rho_direct", "params");
  }
  out.protocol.params.validate();

  if (!doc.contains("steps") || !doc["steps"].is_array()) {
    throw ParseError("protocol needs a 'steps' array");
  }
  std::size_t n = 0;
  for (const auto& j : doc["steps"]) out.protocol.steps.push_back(parse_step(j, n++, sys));

  out.initial = initial_state(out.protocol.assembly, res);

  out.calibration = default_calibration(out.protocol, out.initial);
  out.calibration.mu_dry = endpoints.mu_dry;
  out.calibration.mu_wet = endpoints.mu_wet;
  if (endpoints.film_threshold.si() > 0.0) out.calibration.film_threshold = endpoints.film_threshold;
  if (doc.contains("calibration")) {
    const auto& c = doc["calibration"];
    reject_unknown(c, {"mu_dry", "mu_wet", "film_threshold"}, "calibration");
    if (c.contains("mu_dry")) out.calibration.mu_dry = number(c, "mu_dry", "calibration");
    if (c.contains("mu_wet")) out.calibration.mu_wet = number(c, "mu_wet", "calibration");
    if (c.contains("film_threshold")) {
      out.calibration.film_threshold =
          measure<units::dim::volume>(c, "film_threshold", "calibration", sys);
    }
  }
  out.calibration.validate();
  return out;
}

}  // namespace cartilab::cycle
