#pragma once

// Toolkit configuration: a sectioned `key = value` text file.
//
//   [material]
//   young_modulus = "3 kgf/cm2"   # dimensioned values are strings with a unit
//   poisson_ratio = 0.5
//
// Values are double-quoted strings, numbers or true/false. Keys are bare
// words or double-quoted strings. '#' starts a comment outside strings.
// The full key list is in docs/config.md.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "cartilab/cycle_sim.hpp"
#include "cartilab/elasticity.hpp"
#include "cartilab/units.hpp"

namespace cartilab::config {

struct Value {
  std::variant<std::string, double, bool> data;
  std::size_t line = 0;
};

/// section -> key -> value; keys before any section header live under "".
using Document = std::map<std::string, std::map<std::string, Value>>;

/// Throws ParseError with the offending line.
Document parse_document(std::string_view text);

enum class IntervalMode { gap, center };

struct SheetSpec {
  units::Length width = units::millimetres(14.0);
  units::Length length = units::millimetres(14.0);
  units::Length interval = units::millimetres(2.0);
  IntervalMode interval_mode = IntervalMode::gap;
  units::Length cap_radius = units::millimetres(20.0);
  double cap_half_angle_deg = 60.0;
  units::Force design_load = units::kilograms_force(6.8);
};

struct SimSpec {
  cycle::SimParams params;
  cycle::ReservoirSetup reservoir;
  double mu_dry = 0.079;
  double mu_wet = 0.053;
  std::optional<units::Volume> film_threshold;  // default: one 8 lb load on full inserts
};

struct Paths {
  std::filesystem::path friction_data;
  std::filesystem::path protocol_base;
  std::filesystem::path protocol_nobase;
};

struct ToolkitConfig {
  units::UnitSystem unit_system{units::UnitMode::paper};
  elasticity::SheetAssembly assembly;
  SheetSpec sheet;
  SimSpec sim;
  std::map<std::string, units::Mass> friction_increments;
  Paths paths;

  /// Centre-to-centre hole pitch implied by the interval and its mode.
  units::Length center_pitch() const;
  cycle::Calibration calibration_endpoints() const;

  /// Throws DomainError on any out-of-range value.
  void validate() const;
};

/// Nine-cell sheet, E = 3 kgf/cm2, paper display units.
ToolkitConfig default_config();

/// Applies `doc` over the defaults. Unknown sections or keys, wrong value
/// types and dimension mismatches throw ParseError naming the line.
/// Relative paths resolve against `base_dir`.
ToolkitConfig from_document(const Document& doc, const std::filesystem::path& base_dir = {});

ToolkitConfig load_config(const std::filesystem::path& file);

}  // namespace cartilab::config
