#include "cartilab/contact_geometry.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace cartilab::contact {

namespace {

void check_domain(Length radius, Length deflection) {
  const double r = radius.si();
  const double d = deflection.si();
  if (!(std::isfinite(r) && r > 0.0)) {
    throw DomainError(fmt::format("radius must be positive, got {} m", r));
  }
  if (!(std::isfinite(d) && d >= 0.0 && d <= 2.0 * r)) {
    throw DomainError(
        fmt::format("deflection {} mm outside [0, 2r] for r = {} mm", d * 1e3, r * 1e3));
  }
}

}  // namespace

void CurvedSurface::validate() const { check_domain(radius, deflection); }

double chord_half_angle(Length radius, Length deflection) {
  check_domain(radius, deflection);
  const double c = std::clamp((radius - deflection) / radius, -1.0, 1.0);
  return std::acos(c);
}

Length max_pitch(Length radius, Length deflection) {
  check_domain(radius, deflection);
  // delta (2r - delta) == r^2 - (r - delta)^2 without the cancellation.
  const double d = deflection.si();
  const double r = radius.si();
  return Length::from_si(2.0 * std::sqrt(std::max(0.0, d * (2.0 * r - d))));
}

bool check_pitch_condition(Length pitch, Length radius, Length deflection) {
  if (!(std::isfinite(pitch.si()) && pitch.si() > 0.0)) {
    throw DomainError("pitch must be positive");
  }
  return pitch <= max_pitch(radius, deflection);
}

Length min_deflection_for_pitch(Length pitch, Length radius) {
  const double l = pitch.si();
  const double r = radius.si();
  if (!(std::isfinite(r) && r > 0.0)) throw DomainError("radius must be positive");
  if (!(std::isfinite(l) && l > 0.0)) throw DomainError("pitch must be positive");
  if (l > 2.0 * r) {
    throw DomainError(fmt::format(
        "pitch {} mm exceeds the diameter {} mm; no deflection reaches it", l * 1e3, 2e3 * r));
  }
  const double q = l * l / 4.0;
  // r - sqrt(r^2 - q), rationalised.
  return Length::from_si(q / (r + std::sqrt(std::max(0.0, r * r - q))));
}

PitchAssessment assess(Length radius, Length deflection) {
  PitchAssessment a;
  a.radius = radius;
  a.deflection = deflection;
  a.half_angle = chord_half_angle(radius, deflection);
  a.max_pitch = max_pitch(radius, deflection);
  if (deflection > radius) {
    a.warnings.push_back(fmt::format(
        "deflection {:.4g} mm exceeds the radius {:.4g} mm; the surface cannot physically "
        "flatten past its centre",
        units::in_mm(deflection), units::in_mm(radius)));
  }
  return a;
}

}  // namespace cartilab::contact
