#pragma once

// Where the absorbent inserts go: square through-holes on a flat sheet
// (rectangular grid) or on a spherical cap (pole hole plus concentric rings).
// Coordinates are metres internally; exports are in millimetres.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cartilab/units.hpp"

namespace cartilab::layout {

using units::Length;

using Vec3 = std::array<double, 3>;

struct HoleSpec {
  Length side;   // b
  Length depth;  // sheet height for through-holes

  void validate() const;
};

struct FlatSurface {
  Length width;   // along x
  Length length;  // along y
};

struct SphericalCap {
  Length radius;
  double half_angle = 0.0;  // radians, measured from the pole
};

using Surface = std::variant<FlatSurface, SphericalCap>;

struct Hole {
  Vec3 center;  // metres
  Vec3 normal;  // unit outward normal of the surface
};

struct Layout {
  Surface surface;
  std::vector<Hole> holes;
  Length pitch;
  HoleSpec hole;
  // Grid shape of flat layouts, holes stored row-major (y outer, x inner).
  // Both zero for caps.
  int rows = 0;
  int cols = 0;

  bool is_flat() const { return std::holds_alternative<FlatSurface>(surface); }
};

/// Grid of floor(W/l) x floor(L/l) holes centred on the sheet, centres on
/// the top face z = depth. Throws DomainError when the sheet cannot hold one
/// hole (W or L < l + b) or when neighbouring holes would overlap (l <= b sqrt 2).
Layout flat_layout(Length width, Length length, Length pitch, const HoleSpec& hole);

/// Pole hole, then ring k at polar arc k*l while k*l <= R*theta - b/2, each
/// ring holding floor(2 pi R sin(phi) / l) holes. The sphere is centred at
/// the origin with the pole on +z. Throws DomainError when l > 2R.
Layout spherical_cap_layout(Length radius, double cap_half_angle, Length pitch,
                            const HoleSpec& hole);

/// Hole count of ring k of a cap layout, from the closed form.
int ring_hole_count(Length radius, Length pitch, int ring);

struct CoverageReport {
  bool applicable = false;
  bool passed = false;
  Length required_radius;   // max_pitch(R, delta) / 2
  Length worst_radius;      // largest sampled distance to the nearest hole
  int samples = 0;
  double samples_per_mm2 = 0.0;
  std::string note;
};

/// Samples contact-patch centres on the cap (Fibonacci spiral) and checks
/// that every geodesic disc of radius max_pitch/2 holds a hole centre.
/// Flat layouts get a not-applicable report.
CoverageReport verify_coverage(const Layout& layout, Length design_deflection,
                               int samples = 10000);

/// Smallest geodesic (caps) or Euclidean (flat) centre distance; infinity
/// for fewer than two holes.
Length min_center_distance(const Layout& layout);

enum class ExportFormat { csv, json, stl };
ExportFormat parse_export_format(std::string_view text);

/// `x_mm,y_mm,z_mm,nx,ny,nz`, one row per hole.
std::string to_csv(const Layout& layout);
nlohmann::json to_json(const Layout& layout);

/// Binary little-endian STL of the flat slab with its through-holes, in mm.
/// Triangle count is 12 + 20 n. Throws DomainError for caps.
void write_stl(const Layout& layout, std::ostream& out);
std::uint32_t stl_triangle_count(const Layout& layout);

/// Throws DomainError on an empty layout, or on STL for a cap.
std::string export_layout(const Layout& layout, ExportFormat format);

}  // namespace cartilab::layout
