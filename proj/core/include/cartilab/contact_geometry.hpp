#pragma once

// Chord geometry of a curved sheet of radius r flattened by a deflection
// delta against a plane. The flattened patch has chord 2 sqrt(r^2 - (r-delta)^2);
// inserts spaced no further apart than that chord always touch the plane.

#include <string>
#include <vector>

#include "cartilab/units.hpp"

namespace cartilab::contact {

using units::Length;

struct CurvedSurface {
  Length radius;
  Length deflection;

  /// Throws DomainError unless r > 0 and 0 <= delta <= 2r.
  void validate() const;
};

/// theta with r cos(theta) = r - delta, in radians on [0, pi].
double chord_half_angle(Length radius, Length deflection);

/// Contact chord 2 sqrt(delta (2r - delta)).
Length max_pitch(Length radius, Length deflection);

/// True iff pitch <= max_pitch(radius, deflection); the boundary is accepted.
bool check_pitch_condition(Length pitch, Length radius, Length deflection);

/// Smallest deflection whose contact chord reaches `pitch`:
/// r - sqrt(r^2 - l^2/4). Throws DomainError when pitch > 2r.
Length min_deflection_for_pitch(Length pitch, Length radius);

struct PitchAssessment {
  Length radius;
  Length deflection;
  double half_angle = 0.0;
  Length max_pitch;
  /// Set when deflection > r: mathematically fine, physically the sheet
  /// cannot flatten past its centre.
  std::vector<std::string> warnings;
};

PitchAssessment assess(Length radius, Length deflection);

}  // namespace cartilab::contact
