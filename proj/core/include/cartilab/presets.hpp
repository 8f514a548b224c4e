#pragma once

// Reference geometry and loads of the nine-cell cartilage sheet.
//
// Two material readings exist for the Elastic 50A rubber: E = 3 kgf/cm^2
// (the one that reproduces S = 0.25, E_ap = 4.2, delta = 0.9) and
// E = 3.0 MPa (the Shore-hardness estimate). Neither is canonical.

#include <string>

#include "cartilab/elasticity.hpp"
#include "cartilab/units.hpp"

namespace cartilab::presets {

inline constexpr int kReferenceCellCount = 9;
inline constexpr double kReferenceLoadKgf = 6.8;
inline constexpr double kLightDumbbellLb = 8.0;
inline constexpr double kHeavyDumbbellLb = 15.0;
inline constexpr double kFrictionNormalLoadG = 3843.0;

elasticity::UnitCell reference_cell();  // a = 0.4 cm, b = 0.2 cm, h = 0.6 cm

/// E = 3 kgf/cm^2, nu = 0.5, Shore 50A.
elasticity::SheetAssembly kgf_assembly(int cells = kReferenceCellCount);
/// E = 3.0 MPa, nu = 0.5, Shore 50A.
elasticity::SheetAssembly mpa_assembly(int cells = kReferenceCellCount);

/// Geometry, Poisson's ratio and modulus equal the kgf reading (cell count free).
bool is_kgf_preset(const elasticity::SheetAssembly& sheet);

/// Note attached to deflection reports computed on the kgf preset: the
/// derivation's "0.9" is 0.9 cm with kgf/cm^2 inputs, while the measured
/// compression was about 1 mm.
std::string deflection_unit_erratum(const elasticity::SheetAssembly& sheet,
                                    units::Force total_load);

}  // namespace cartilab::presets
