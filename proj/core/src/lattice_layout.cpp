#include "cartilab/lattice_layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "cartilab/contact_geometry.hpp"
#include "cartilab/error.hpp"

namespace cartilab::layout {

namespace {

constexpr double kPi = std::numbers::pi;

// floor() that does not lose an exact integer to rounding noise.
int stable_floor(double v) { return static_cast<int>(std::floor(v * (1.0 + 1e-12))); }

void require_positive(Length v, const char* what) {
  if (!(std::isfinite(v.si()) && v.si() > 0.0)) {
    throw DomainError(fmt::format("{} must be positive", what));
  }
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double geodesic(const Vec3& a, const Vec3& b, double r) {
  return r * std::acos(std::clamp(dot(a, b) / (r * r), -1.0, 1.0));
}

double clean(double v, double scale) {
  const double r = std::round(v * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

void HoleSpec::validate() const {
  require_positive(side, "hole side");
  require_positive(depth, "hole depth");
}

Layout flat_layout(Length width, Length length, Length pitch, const HoleSpec& hole) {
  hole.validate();
  require_positive(width, "sheet width");
  require_positive(length, "sheet length");
  require_positive(pitch, "pitch");
  const Length need = pitch + hole.side;
  if (width < need || length < need) {
    throw DomainError(fmt::format("sheet {} x {} mm too small for one hole at pitch {} mm (needs {} mm)",
                                  units::in_mm(width), units::in_mm(length), units::in_mm(pitch),
                                  units::in_mm(need)));
  }
  if (!(pitch.si() > hole.side.si() * std::numbers::sqrt2)) {
    throw DomainError(fmt::format("pitch {} mm lets {} mm holes overlap", units::in_mm(pitch),
                                  units::in_mm(hole.side)));
  }
  Layout out;
  out.surface = FlatSurface{width, length};
  out.pitch = pitch;
  out.hole = hole;
  out.cols = stable_floor(width / pitch);
  out.rows = stable_floor(length / pitch);
  const double l = pitch.si();
  const double x0 = 0.5 * (width.si() - (out.cols - 1) * l);
  const double y0 = 0.5 * (length.si() - (out.rows - 1) * l);
  out.holes.reserve(static_cast<std::size_t>(out.rows * out.cols));
  for (int j = 0; j < out.rows; ++j) {
    for (int i = 0; i < out.cols; ++i) {
      out.holes.push_back({{x0 + i * l, y0 + j * l, hole.depth.si()}, {0.0, 0.0, 1.0}});
    }
  }
  return out;
}

int ring_hole_count(Length radius, Length pitch, int ring) {
  if (ring == 0) return 1;
  const double phi = ring * pitch.si() / radius.si();
  return stable_floor(2.0 * kPi * radius.si() * std::sin(phi) / pitch.si());
}

Layout spherical_cap_layout(Length radius, double cap_half_angle, Length pitch,
                            const HoleSpec& hole) {
  hole.validate();
  require_positive(radius, "cap radius");
  require_positive(pitch, "pitch");
  if (!(cap_half_angle > 0.0 && cap_half_angle <= kPi / 2 + 1e-12)) {
    throw DomainError(fmt::format("cap half-angle must lie in (0, 90] degrees, got {}",
                                  cap_half_angle * 180.0 / kPi));
  }
  if (pitch > 2.0 * radius) {
    throw DomainError(fmt::format("pitch {} mm larger than the cap (2R = {} mm)",
                                  units::in_mm(pitch), units::in_mm(2.0 * radius)));
  }
  const double r = radius.si();
  const double l = pitch.si();
  const double min_gap = hole.side.si() * std::numbers::sqrt2;
  if (!(l > min_gap)) {
    throw DomainError(fmt::format("pitch {} mm lets {} mm holes overlap", units::in_mm(pitch),
                                  units::in_mm(hole.side)));
  }

  Layout out;
  out.surface = SphericalCap{radius, cap_half_angle};
  out.pitch = pitch;
  out.hole = hole;
  out.holes.push_back({{0.0, 0.0, r}, {0.0, 0.0, 1.0}});

  const double reach = r * cap_half_angle - 0.5 * hole.side.si();
  for (int k = 1; k * l <= reach * (1.0 + 1e-12); ++k) {
    const double phi = k * l / r;
    const int n = ring_hole_count(radius, pitch, k);
    if (n < 1) break;
    if (n >= 2 && !(2.0 * r * std::sin(phi) * std::sin(kPi / n) > min_gap)) {
      throw DomainError(fmt::format("ring {} holes would overlap at pitch {} mm", k,
                                    units::in_mm(pitch)));
    }
    for (int j = 0; j < n; ++j) {
      const double az = 2.0 * kPi * j / n;
      const Vec3 u{std::sin(phi) * std::cos(az), std::sin(phi) * std::sin(az), std::cos(phi)};
      out.holes.push_back({{r * u[0], r * u[1], r * u[2]}, u});
    }
  }
  return out;
}

Length min_center_distance(const Layout& layout) {
  double best = std::numeric_limits<double>::infinity();
  const auto* cap = std::get_if<SphericalCap>(&layout.surface);
  const auto& h = layout.holes;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      double d;
      if (cap) {
        d = geodesic(h[i].center, h[j].center, cap->radius.si());
      } else {
        d = std::hypot(h[i].center[0] - h[j].center[0], h[i].center[1] - h[j].center[1],
                       h[i].center[2] - h[j].center[2]);
      }
      best = std::min(best, d);
    }
  }
  return Length::from_si(best);
}

CoverageReport verify_coverage(const Layout& layout, Length design_deflection, int samples) {
  CoverageReport rep;
  const auto* cap = std::get_if<SphericalCap>(&layout.surface);
  if (!cap) {
    rep.note = "not applicable: a flat sheet touches the plane everywhere";
    return rep;
  }
  if (samples < 1) throw DomainError("coverage needs at least one sample");
  if (layout.holes.empty()) throw DomainError("layout has no holes");
  const double r = cap->radius.si();
  rep.applicable = true;
  rep.required_radius = contact::max_pitch(cap->radius, design_deflection) / 2.0;
  rep.samples = samples;

  std::vector<Vec3> units_dirs;
  units_dirs.reserve(layout.holes.size());
  for (const auto& h : layout.holes) units_dirs.push_back(h.normal);

  // Patch centres are sampled where the whole patch lies on the cap; a patch
  // hanging over the rim is not carried by the cap alone.
  const double reach = std::max(0.0, cap->half_angle - rep.required_radius.si() / r);
  // Fibonacci spiral, equal-area in cos(polar) over that region.
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double span = 1.0 - std::cos(reach);
  const double area = 2.0 * kPi * r * r * span;
  rep.samples_per_mm2 = area > 0.0 ? samples / (area * 1e6) : 0.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - span * (i + 0.5) / samples;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double az = golden * i;
    const Vec3 p{s * std::cos(az), s * std::sin(az), z};
    double best = -1.0;
    for (const auto& u : units_dirs) best = std::max(best, dot(p, u));
    worst = std::max(worst, r * std::acos(std::clamp(best, -1.0, 1.0)));
  }
  rep.worst_radius = Length::from_si(worst);
  rep.passed = worst <= rep.required_radius.si() && rep.required_radius.si() > 0.0;
  rep.note = fmt::format("worst empty disc {:.4f} mm vs allowed {:.4f} mm over {} samples",
                         worst * 1e3, rep.required_radius.si() * 1e3, samples);
  return rep;
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::csv;
  if (text == "json") return ExportFormat::json;
  if (text == "stl") return ExportFormat::stl;
  throw ParseError(fmt::format("unknown export format '{}' (csv, json, stl)", text));
}

std::string to_csv(const Layout& layout) {
  std::string out = "x_mm,y_mm,z_mm,nx,ny,nz\n";
  for (const auto& h : layout.holes) {
    out += fmt::format("{:.6f},{:.6f},{:.6f},{:.9f},{:.9f},{:.9f}\n", clean(h.center[0] * 1e3, 1e6),
                       clean(h.center[1] * 1e3, 1e6), clean(h.center[2] * 1e3, 1e6),
                       clean(h.normal[0], 1e9), clean(h.normal[1], 1e9), clean(h.normal[2], 1e9));
  }
  return out;
}

nlohmann::json to_json(const Layout& layout) {
  nlohmann::json surface;
  if (const auto* f = std::get_if<FlatSurface>(&layout.surface)) {
    surface = {{"type", "flat"}, {"width_mm", units::in_mm(f->width)},
               {"length_mm", units::in_mm(f->length)}};
  } else {
    const auto& c = std::get<SphericalCap>(layout.surface);
    surface = {{"type", "spherical_cap"}, {"radius_mm", units::in_mm(c.radius)},
               {"cap_half_angle_deg", c.half_angle * 180.0 / kPi}};
  }
  nlohmann::json holes = nlohmann::json::array();
  for (const auto& h : layout.holes) {
    holes.push_back({{"center_mm",
                      {clean(h.center[0] * 1e3, 1e6), clean(h.center[1] * 1e3, 1e6),
                       clean(h.center[2] * 1e3, 1e6)}},
                     {"normal", {clean(h.normal[0], 1e9), clean(h.normal[1], 1e9),
                                 clean(h.normal[2], 1e9)}}});
  }
  nlohmann::json j = {{"surface", surface},
                      {"pitch_mm", units::in_mm(layout.pitch)},
                      {"hole", {{"side_mm", units::in_mm(layout.hole.side)},
                                {"depth_mm", units::in_mm(layout.hole.depth)}}},
                      {"hole_count", layout.holes.size()},
                      {"holes", holes}};
  if (layout.is_flat()) {
    j["rows"] = layout.rows;
    j["cols"] = layout.cols;
  }
  return j;
}

std::string export_layout(const Layout& layout, ExportFormat format) {
  if (layout.holes.empty()) throw DomainError("cannot export an empty layout");
  switch (format) {
    case ExportFormat::csv:
      return to_csv(layout);
    case ExportFormat::json:
      return to_json(layout).dump(2) + "\n";
    case ExportFormat::stl: {
      std::ostringstream os(std::ios::binary);
      write_stl(layout, os);
      return std::move(os).str();
    }
  }
  throw DomainError("unknown export format");
}

}  // namespace cartilab::layout
