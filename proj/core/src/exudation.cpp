#include "cartilab/exudation.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cartilab/presets.hpp"

namespace cartilab::exudation {

namespace {

void require_non_negative(double v, const char* what) {
  if (!(std::isfinite(v) && v >= 0.0)) throw DomainError(fmt::format("{} must be non-negative", what));
}

bool rel_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Volume axial_exudation(Length hole_side, Length deflection) {
  require_non_negative(hole_side.si(), "hole side");
  require_non_negative(deflection.si(), "deflection");
  return hole_side * hole_side * deflection;
}

Volume lateral_exudation(double poisson_ratio, Length outer_side, Length hole_side,
                         Length deflection) {
  if (!(std::isfinite(poisson_ratio) && poisson_ratio >= 0.0 && poisson_ratio <= 0.5 + 1e-12)) {
    throw DomainError("Poisson's ratio must lie in [0, 0.5]");
  }
  require_non_negative(hole_side.si(), "hole side");
  require_non_negative(deflection.si(), "deflection");
  if (!(hole_side <= outer_side)) throw DomainError("hole side must not exceed the outer side");
  return poisson_ratio * (outer_side * outer_side - hole_side * hole_side) * deflection;
}

ExudationResult total_exudation(double poisson_ratio, Length outer_side, Length hole_side,
                                Length deflection) {
  ExudationResult r;
  r.axial = axial_exudation(hole_side, deflection);
  r.lateral = lateral_exudation(poisson_ratio, outer_side, hole_side, deflection);
  r.total = r.axial + r.lateral;
  r.per_cell = true;
  return r;
}

ExudationResult cell_exudation(const elasticity::SheetAssembly& sheet, Force total_load) {
  const Length delta = elasticity::sheet_deflection(sheet, total_load);
  return total_exudation(sheet.material.poisson_ratio, sheet.cell.outer_side,
                         sheet.cell.hole_side, delta);
}

ExudationResult sheet_exudation(const elasticity::SheetAssembly& sheet, Force total_load) {
  ExudationResult r = cell_exudation(sheet, total_load);
  const double x = static_cast<double>(sheet.cell_count);
  r.axial *= x;
  r.lateral *= x;
  r.total = r.axial + r.lateral;
  r.per_cell = false;
  return r;
}

std::string_view to_string(ConstantVerdict v) {
  switch (v) {
    case ConstantVerdict::not_applicable:
      return "not_applicable";
    case ConstantVerdict::matches_at_reference_load_only:
      return "matches_at_reference_load_only";
    case ConstantVerdict::discrepancy:
      return "discrepancy";
  }
  return "unknown";
}

ConstantReport check_paper_constant(const elasticity::SheetAssembly& sheet, Force total_load) {
  require_non_negative(total_load.si(), "load");
  ConstantReport r;
  r.load_kgf = units::in_kgf(total_load);
  r.cells = sheet.cell_count;
  if (!presets::is_kgf_preset(sheet)) {
    r.verdict = ConstantVerdict::not_applicable;
    r.note = "closed-form constant 17W/(21x) only applies to the 0.4/0.2/0.6 cm, "
             "E = 3 kgf/cm2, nu = 0.5 sheet";
    return r;
  }

  const double nu = sheet.material.poisson_ratio;
  const double a = units::in_cm(sheet.cell.outer_side);
  const double b = units::in_cm(sheet.cell.hole_side);
  const double h = units::in_cm(sheet.cell.height);
  const double area = units::in_cm2(sheet.cell.loaded_area());
  const double squeeze = nu * a * a + b * b - nu * b * b;

  const double s = elasticity::shape_factor(sheet.cell);
  const double e_ap = units::in_kgf_per_cm2(elasticity::apparent_modulus(
      elasticity::shear_modulus(sheet.material.young_modulus, nu), s));
  r.rounded_apparent_modulus = std::round(e_ap * 10.0) / 10.0;

  r.symbolic_coefficient = squeeze * h / (r.rounded_apparent_modulus * area);
  r.pipeline_coefficient = squeeze * h / (e_ap * area);

  const double w = r.load_kgf;
  const double x = static_cast<double>(r.cells);
  r.symbolic_total = r.symbolic_coefficient * w;
  r.symbolic_per_cell = r.symbolic_total / x;
  r.pipeline_total = r.pipeline_coefficient * w;
  r.pipeline_per_cell = r.pipeline_total / x;
  r.constant_per_cell = 17.0 / (21.0 * x);
  r.literal_per_cell = 17.0 * w / (21.0 * x);
  r.matching_load_kgf = (17.0 / 21.0) / r.symbolic_coefficient;

  r.constant_matches = rel_equal(r.constant_per_cell, r.symbolic_per_cell);
  r.literal_matches = rel_equal(r.literal_per_cell, r.symbolic_per_cell);
  r.erratum = !r.literal_matches;
  r.verdict = r.constant_matches ? ConstantVerdict::matches_at_reference_load_only
                                 : ConstantVerdict::discrepancy;
  r.note = fmt::format(
      "symbolic per-cell volume is {:.6g} W/x cm3 (W in kgf); the constant 17/(21x) cm3 equals it "
      "only at W = {:.4g} kgf, and 17W/(21x) read literally is {:.4g} times too large",
      r.symbolic_coefficient, r.matching_load_kgf, (17.0 / 21.0) / r.symbolic_coefficient);
  return r;
}

}  // namespace cartilab::exudation
