#pragma once

// Compression model of a perforated rubber sheet built from square unit
// cells: a rubber prism of side a and height h with a square absorbent
// insert of side b through its centre.

#include <optional>
#include <string>
#include <vector>

#include "cartilab/units.hpp"

namespace cartilab::elasticity {

using units::Area;
using units::Force;
using units::Length;
using units::Pressure;

struct MaterialSpec {
  Pressure young_modulus;
  double poisson_ratio = 0.5;
  std::optional<double> shore_a;

  /// Throws DomainError unless E > 0 and 0 <= nu <= 0.5.
  void validate() const;
};

struct UnitCell {
  Length outer_side;  // a
  Length hole_side;   // b
  Length height;      // h

  /// a^2 - b^2, the rubber cross-section carrying load.
  Area loaded_area() const;
  /// 4 b h, the insert walls the rubber can bulge into.
  Area free_area() const;

  /// Throws DomainError unless 0 <= b < a and h > 0.
  void validate() const;
};

struct SheetAssembly {
  UnitCell cell;
  int cell_count = 1;
  MaterialSpec material;

  void validate() const;
};

inline constexpr double kShapeFactorCoefficient = 3.290;

/// G = E / (2 (1 + nu)).
Pressure shear_modulus(Pressure young_modulus, double poisson_ratio);

/// S = A_L / A_F. Throws DomainError when A_F is zero (unconstrained block).
double shape_factor(Area loaded_area, Area free_area);

/// S = (a^2 - b^2) / (4 b h). Throws DomainError when b == 0.
double shape_factor(const UnitCell& cell);

/// E_ap = G (4 + 3.290 S^2).
Pressure apparent_modulus(Pressure shear, double shape);

/// delta = W h / (E_ap A_L).
Length deflection(Force load, Pressure apparent, Area loaded_area, Length height);

/// Deflection of an x-cell sheet carrying `total_load`; each cell takes W/x.
Length sheet_deflection(const SheetAssembly& sheet, Force total_load);

/// Exact inverse of sheet_deflection.
Force load_for_deflection(const SheetAssembly& sheet, Length delta);

/// Gent's Shore-A to Young's modulus relation, valid for 10 <= shore_a <= 90.
Pressure shore_to_young(double shore_a);

/// Everything the compression model derives for one loaded sheet.
struct SheetResponse {
  double shape_factor = 0.0;
  Pressure shear_modulus;
  Pressure apparent_modulus;
  Force load_per_cell;
  Length deflection;
  /// Non-fatal validity flags (e.g. deflection beyond h/2).
  std::vector<std::string> warnings;
};

SheetResponse analyze_sheet(const SheetAssembly& sheet, Force total_load);

}  // namespace cartilab::elasticity
