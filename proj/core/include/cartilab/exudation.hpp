#pragma once

// Volume squeezed out of the absorbent inserts when the rubber compresses:
// the axial part b^2 delta plus the lateral part nu (a^2 - b^2) delta pushed
// in by the bulging rubber. Reported as a displaced-volume upper bound.

#include <string>

#include "cartilab/elasticity.hpp"
#include "cartilab/units.hpp"

namespace cartilab::exudation {

using units::Force;
using units::Length;
using units::Volume;

struct ExudationResult {
  Volume axial;
  Volume lateral;
  Volume total;  // axial + lateral
  bool per_cell = true;
};

/// L1 = b^2 delta.
Volume axial_exudation(Length hole_side, Length deflection);

/// L2 = nu (a^2 - b^2) delta.
Volume lateral_exudation(double poisson_ratio, Length outer_side, Length hole_side,
                         Length deflection);

/// L1 + L2 == (nu a^2 + b^2 - nu b^2) delta.
ExudationResult total_exudation(double poisson_ratio, Length outer_side, Length hole_side,
                                Length deflection);

/// One cell of `sheet` under `total_load` (each cell carries W/x).
ExudationResult cell_exudation(const elasticity::SheetAssembly& sheet, Force total_load);

/// Whole sheet: cell result times the cell count.
ExudationResult sheet_exudation(const elasticity::SheetAssembly& sheet, Force total_load);

enum class ConstantVerdict {
  not_applicable,                  // geometry/material is not the kgf preset
  matches_at_reference_load_only,  // 17/(21x) equals the symbolic value at this W
  discrepancy,
};

std::string_view to_string(ConstantVerdict v);

/// Comparison of the symbolic pipeline against the closed-form constant
/// 17W/(21x) cm^3 quoted for the kgf preset. Volumes in cm^3, loads in kgf.
struct ConstantReport {
  ConstantVerdict verdict = ConstantVerdict::not_applicable;
  double load_kgf = 0.0;
  int cells = 0;
  /// E_ap rounded to one decimal in kgf/cm^2, as the closed form does (4.2).
  double rounded_apparent_modulus = 0.0;
  /// Sheet volume per kgf of total load with the rounded E_ap (5/42).
  double symbolic_coefficient = 0.0;
  /// Same with the unrounded E_ap.
  double pipeline_coefficient = 0.0;
  double symbolic_per_cell = 0.0;
  double symbolic_total = 0.0;
  double pipeline_per_cell = 0.0;
  double pipeline_total = 0.0;
  double constant_per_cell = 0.0;  // 17/(21x), the load already substituted
  double literal_per_cell = 0.0;   // 17W/(21x) read with W as a free variable
  double matching_load_kgf = 0.0;  // load at which 17/(21x) equals the symbolic value
  bool constant_matches = false;
  bool literal_matches = false;
  bool erratum = false;
  std::string note;
};

ConstantReport check_paper_constant(const elasticity::SheetAssembly& sheet, Force total_load);

}  // namespace cartilab::exudation
