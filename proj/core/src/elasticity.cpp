#include "cartilab/elasticity.hpp"

#include <cmath>

#include <fmt/format.h>

namespace cartilab::elasticity {

namespace {

constexpr double kPoissonTolerance = 1e-12;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void MaterialSpec::validate() const {
  require(finite_positive(young_modulus.si()), "Young's modulus must be positive");
  require(std::isfinite(poisson_ratio) && poisson_ratio >= 0.0 &&
              poisson_ratio <= 0.5 + kPoissonTolerance,
          "Poisson's ratio must lie in [0, 0.5]");
  if (shore_a) {
    require(std::isfinite(*shore_a) && *shore_a >= 0.0 && *shore_a <= 100.0,
            "Shore A hardness must lie in [0, 100]");
  }
}

Area UnitCell::loaded_area() const { return outer_side * outer_side - hole_side * hole_side; }

Area UnitCell::free_area() const { return 4.0 * hole_side * height; }

void UnitCell::validate() const {
  require(finite_positive(outer_side.si()), "cell outer side must be positive");
  require(std::isfinite(hole_side.si()) && hole_side.si() >= 0.0,
          "cell hole side must be non-negative");
  require(hole_side < outer_side, "cell hole side must be smaller than the outer side");
  require(finite_positive(height.si()), "cell height must be positive");
}

void SheetAssembly::validate() const {
  cell.validate();
  material.validate();
  require(cell_count >= 1, "cell count must be at least 1");
}

Pressure shear_modulus(Pressure young_modulus, double poisson_ratio) {
  require(finite_positive(young_modulus.si()), "Young's modulus must be positive");
  require(std::isfinite(poisson_ratio) && poisson_ratio >= 0.0,
          "Poisson's ratio must be non-negative");
  return young_modulus / (2.0 * (1.0 + poisson_ratio));
}

double shape_factor(Area loaded_area, Area free_area) {
  require(finite_positive(loaded_area.si()), "loaded area must be positive");
  require(free_area.si() != 0.0, "free area is zero: block has no free surface");
  require(finite_positive(free_area.si()), "free area must be positive");
  return loaded_area / free_area;
}

double shape_factor(const UnitCell& cell) {
  cell.validate();
  require(cell.hole_side.si() > 0.0, "hole side is zero: cell has no free surface");
  return shape_factor(cell.loaded_area(), cell.free_area());
}

Pressure apparent_modulus(Pressure shear, double shape) {
  require(finite_positive(shear.si()), "shear modulus must be positive");
  require(std::isfinite(shape) && shape >= 0.0, "shape factor must be non-negative");
  return shear * (4.0 + kShapeFactorCoefficient * shape * shape);
}

Length deflection(Force load, Pressure apparent, Area loaded_area, Length height) {
  require(std::isfinite(load.si()) && load.si() >= 0.0, "load must be non-negative");
  require(finite_positive(apparent.si()), "apparent modulus must be positive");
  require(finite_positive(loaded_area.si()), "loaded area must be positive");
  require(finite_positive(height.si()), "height must be positive");
  return load * height / (apparent * loaded_area);
}

namespace {

// Per-cell axial stiffness E_ap A_L / h.
units::Quantity<units::dim::force / units::dim::length> cell_stiffness(const SheetAssembly& sheet) {
  sheet.validate();
  const double s = shape_factor(sheet.cell);
  const Pressure g = shear_modulus(sheet.material.young_modulus, sheet.material.poisson_ratio);
  return apparent_modulus(g, s) * sheet.cell.loaded_area() / sheet.cell.height;
}

}  // namespace

Length sheet_deflection(const SheetAssembly& sheet, Force total_load) {
  require(std::isfinite(total_load.si()) && total_load.si() >= 0.0,
          "total load must be non-negative");
  sheet.validate();
  const double s = shape_factor(sheet.cell);
  const Pressure e_ap =
      apparent_modulus(shear_modulus(sheet.material.young_modulus, sheet.material.poisson_ratio), s);
  return deflection(total_load / static_cast<double>(sheet.cell_count), e_ap,
                    sheet.cell.loaded_area(), sheet.cell.height);
}

Force load_for_deflection(const SheetAssembly& sheet, Length delta) {
  require(std::isfinite(delta.si()) && delta.si() >= 0.0, "deflection must be non-negative");
  return cell_stiffness(sheet) * delta * static_cast<double>(sheet.cell_count);
}

Pressure shore_to_young(double shore_a) {
  if (!(shore_a >= 10.0 && shore_a <= 90.0)) {
    throw DomainError(fmt::format("Shore A hardness {} outside the valid range [10, 90]", shore_a));
  }
  const double mpa = 0.0981 * (56.0 + 7.62336 * shore_a) / (0.137505 * (254.0 - 2.54 * shore_a));
  return units::megapascals(mpa);
}

SheetResponse analyze_sheet(const SheetAssembly& sheet, Force total_load) {
  SheetResponse r;
  sheet.validate();
  r.shape_factor = shape_factor(sheet.cell);
  r.shear_modulus = shear_modulus(sheet.material.young_modulus, sheet.material.poisson_ratio);
  r.apparent_modulus = apparent_modulus(r.shear_modulus, r.shape_factor);
  r.load_per_cell = total_load / static_cast<double>(sheet.cell_count);
  r.deflection = sheet_deflection(sheet, total_load);
  const Length h = sheet.cell.height;
  if (r.deflection > h) {
    r.warnings.push_back(fmt::format(
        "deflection {:.4g} mm exceeds the sheet height {:.4g} mm; the linear model is not valid",
        units::in_mm(r.deflection), units::in_mm(h)));
  } else if (r.deflection > h / 2.0) {
    r.warnings.push_back(fmt::format(
        "deflection {:.4g} mm exceeds half the sheet height ({:.4g} mm); small-strain model is "
        "outside its validity range",
        units::in_mm(r.deflection), units::in_mm(h / 2.0)));
  }
  return r;
}

}  // namespace cartilab::elasticity
