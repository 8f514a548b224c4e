#include "cartilab/presets.hpp"

#include <cmath>

#include <fmt/format.h>

namespace cartilab::presets {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); }

elasticity::SheetAssembly with_modulus(units::Pressure e, int cells) {
  elasticity::SheetAssembly s;
  s.cell = reference_cell();
  s.cell_count = cells;
  s.material.young_modulus = e;
  s.material.poisson_ratio = 0.5;
  s.material.shore_a = 50.0;
  return s;
}

}  // namespace

elasticity::UnitCell reference_cell() {
  return {units::centimetres(0.4), units::centimetres(0.2), units::centimetres(0.6)};
}

elasticity::SheetAssembly kgf_assembly(int cells) {
  return with_modulus(units::kgf_per_cm2(3.0), cells);
}

elasticity::SheetAssembly mpa_assembly(int cells) {
  return with_modulus(units::megapascals(3.0), cells);
}

bool is_kgf_preset(const elasticity::SheetAssembly& sheet) {
  const auto ref = kgf_assembly(sheet.cell_count);
  return close(sheet.cell.outer_side.si(), ref.cell.outer_side.si()) &&
         close(sheet.cell.hole_side.si(), ref.cell.hole_side.si()) &&
         close(sheet.cell.height.si(), ref.cell.height.si()) &&
         close(sheet.material.poisson_ratio, ref.material.poisson_ratio) &&
         close(sheet.material.young_modulus.si(), ref.material.young_modulus.si());
}

std::string deflection_unit_erratum(const elasticity::SheetAssembly& sheet,
                                    units::Force total_load) {
  if (!is_kgf_preset(sheet)) return {};
  const auto delta = elasticity::sheet_deflection(sheet, total_load);
  auto stiff = sheet;
  stiff.material.young_modulus = units::megapascals(3.0);
  const auto delta_mpa = elasticity::sheet_deflection(stiff, total_load);
  return fmt::format(
      "unit erratum: with E = 3 kgf/cm2 and lengths in cm the deflection is {:.4f} cm "
      "({:.2f} mm), not {:.1f} mm; a compression of about 1 mm corresponds to the E = 3.0 MPa "
      "reading, which gives {:.3f} mm at this load",
      units::in_cm(delta), units::in_mm(delta), units::in_cm(delta), units::in_mm(delta_mpa));
}

}  // namespace cartilab::presets
