#pragma once

// Quasi-static load / wipe / unload cycles on a cartilage sheet.
//
// Fluid lives in five compartments: the absorbent inserts, the base sheet,
// the surface film, the capsule pool, and what the wiper has taken. Every
// step moves fluid between compartments; the sum never changes.
//
// Load squeezes the inserts. The compression demand is eta times the
// displaced volume of the exudation model; a partially filled insert gives
// up the same fraction of its fluid as a full one would:
//   exuded = insert_fluid * min(1, demand / insert_capacity)
// Unload refills the inserts, from the base sheet (which first tops up from
// the capsule pool) at fraction rho of the deficit, or straight from the pool
// at the smaller fraction rho_direct when there is no base sheet.

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cartilab/elasticity.hpp"
#include "cartilab/units.hpp"

namespace cartilab::cycle {

using units::Length;
using units::Mass;
using units::Volume;

struct ReservoirState {
  Volume insert_fluid;
  Volume insert_capacity;
  Volume base_fluid;
  Volume base_capacity;
  Volume surface_film;
  Volume capsule_pool;
  Volume wiped_total;
  bool has_base_sheet = false;

  Volume total_fluid() const;
  /// Throws DomainError if a compartment is negative or over capacity.
  void validate() const;

  friend bool operator==(const ReservoirState&, const ReservoirState&) = default;
};

struct SimParams {
  double efficiency = 1.0;        // eta
  double replenish = 1.0;         // rho, via the base sheet
  double replenish_direct = 0.2;  // rho_direct, no base sheet

  void validate() const;
};

struct LoadStep {
  Mass mass;
};
struct WipeStep {};
struct UnloadStep {};
using Step = std::variant<LoadStep, WipeStep, UnloadStep>;

std::string describe(const Step& step);

struct Protocol {
  std::vector<Step> steps;
  elasticity::SheetAssembly assembly;
  SimParams params;
  units::UnitSystem unit_system;  // gravity used to turn masses into loads
};

/// Sizing of the fluid compartments.
struct ReservoirSetup {
  double porosity = 0.9;
  bool base_sheet = true;
  Length base_thickness = units::millimetres(2.0);
  Volume capsule_pool = units::cubic_centimetres(2.0);
};

/// x b^2 h porosity.
Volume insert_capacity(const elasticity::SheetAssembly& sheet, double porosity);
/// x a^2 t porosity, t the base-sheet thickness.
Volume base_capacity(const elasticity::SheetAssembly& sheet, double porosity, Length thickness);

/// Saturated inserts and base sheet, empty film and wiper.
ReservoirState initial_state(const elasticity::SheetAssembly& sheet, const ReservoirSetup& setup);

struct StepResult {
  ReservoirState state;
  Volume exuded;  // non-zero only for loads
};

StepResult step_load(const ReservoirState& state, Mass mass, const Protocol& protocol);
ReservoirState step_wipe(const ReservoirState& state);
ReservoirState step_unload(const ReservoirState& state, const Protocol& protocol);

/// Film-dependent friction: mu_dry with no film, mu_wet at or above the
/// film threshold, linear in between.
struct Calibration {
  double mu_dry = 0.079;
  double mu_wet = 0.053;
  Volume film_threshold;

  void validate() const;
};

double friction_estimate(const ReservoirState& state, const Calibration& calibration);

/// Threshold = film left by one load at 8 lb on full inserts of `protocol`'s sheet.
Calibration default_calibration(const Protocol& protocol, const ReservoirState& full);

struct StepRecord {
  std::size_t index = 0;  // 1-based
  std::string action;
  ReservoirState state;
  Volume exuded;
  double mu_estimate = 0.0;
};

/// Runs every step, checking conservation (1e-12 relative) after each.
std::vector<StepRecord> run_protocol(const Protocol& protocol, const ReservoirState& initial,
                                     const Calibration& calibration);

/// Exuded volume of each load step, in order.
std::vector<Volume> load_exudations(const std::vector<StepRecord>& series);

/// `step,action,insert_fluid,...,exuded,mu_est`; volumes in `volume_unit`.
std::string series_to_csv(const std::vector<StepRecord>& series, const units::UnitSystem& sys,
                          std::string_view volume_unit);
nlohmann::json series_to_json(const std::vector<StepRecord>& series, const units::UnitSystem& sys,
                              std::string_view volume_unit);

/// A protocol file: steps plus everything needed to start the run.
struct ProtocolFile {
  Protocol protocol;
  ReservoirState initial;
  Calibration calibration;
  std::string description;
};

/// Parses the protocol JSON. Sections missing from the file fall back to
/// `sheet`, `setup`, `params` and the calibration endpoints given here.
ProtocolFile parse_protocol(const nlohmann::json& doc, const elasticity::SheetAssembly& sheet,
                            const ReservoirSetup& setup, const SimParams& params,
                            const Calibration& endpoints,
                            const units::UnitSystem& sys = units::UnitSystem{});

}  // namespace cartilab::cycle
