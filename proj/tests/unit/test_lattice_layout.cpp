#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cartilab/contact_geometry.hpp"
#include "cartilab/error.hpp"
#include "cartilab/lattice_layout.hpp"

namespace u = cartilab::units;
namespace ly = cartilab::layout;
using cartilab::DomainError;

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double d) { return d * kPi / 180.0; }

double norm(const ly::Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

ly::HoleSpec hole(double side_mm, double depth_mm = 6.0) {
  return {u::millimetres(side_mm), u::millimetres(depth_mm)};
}

ly::Layout cap(double radius_mm, double half_deg, double pitch_mm, double side_mm) {
  return ly::spherical_cap_layout(u::millimetres(radius_mm), deg(half_deg),
                                  u::millimetres(pitch_mm), hole(side_mm));
}

// Independent ring-count oracle: rings k >= 1 at polar angle k l / R while
// the ring still leaves half a hole of margin to the rim.
int oracle_count(double r, double half, double l, double b) {
  int total = 1;
  for (int k = 1; k * l <= r * half - b / 2 + 1e-12 * r; ++k) {
    total += static_cast<int>(std::floor(2 * kPi * r * std::sin(k * l / r) / l * (1 + 1e-12)));
  }
  return total;
}

}  // namespace

TEST_SUITE("lattice_layout") {

TEST_CASE("nine-hole flat sheet") {
  const auto l = ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(4), hole(2));
  CHECK(l.rows == 3);
  CHECK(l.cols == 3);
  REQUIRE(l.holes.size() == 9);
  CHECK(l.is_flat());
  // Row-major, centred: 3, 7, 11 mm on both axes.
  const double want[] = {3, 7, 11};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto& h = l.holes[static_cast<std::size_t>(r * 3 + c)];
      CHECK(h.center[0] * 1e3 == doctest::Approx(want[c]));
      CHECK(h.center[1] * 1e3 == doctest::Approx(want[r]));
      CHECK(h.center[2] * 1e3 == doctest::Approx(6.0));
      CHECK(h.normal == ly::Vec3{0, 0, 1});
    }
  }
  CHECK(u::in_mm(ly::min_center_distance(l)) == doctest::Approx(4.0));
}

TEST_CASE("flat sheet guards") {
  CHECK_THROWS_AS(ly::flat_layout(u::millimetres(1), u::millimetres(14), u::millimetres(4), hole(2)), DomainError);
  CHECK_THROWS_AS(ly::flat_layout(u::millimetres(5.9), u::millimetres(14), u::millimetres(4), hole(2)), DomainError);
  CHECK_NOTHROW(ly::flat_layout(u::millimetres(6), u::millimetres(6), u::millimetres(4), hole(2)));
  CHECK_THROWS_AS(ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(2.8), hole(2)), DomainError);
  CHECK_THROWS_AS(ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(4), hole(0)), DomainError);
  CHECK_THROWS_AS(ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(4), hole(2, 0)), DomainError);
}

TEST_CASE("flat scaling") {
  for (double side : {14.0, 20.0, 31.0, 50.0}) {
    const auto a = ly::flat_layout(u::millimetres(side), u::millimetres(side), u::millimetres(4), hole(2));
    const auto b = ly::flat_layout(u::millimetres(2 * side), u::millimetres(2 * side), u::millimetres(4), hole(2));
    const double ratio = static_cast<double>(b.holes.size()) / static_cast<double>(a.holes.size());
    CHECK(ratio >= 4.0);
    CHECK(ratio <= 4.0 * 1.6);
  }
  const auto big = ly::flat_layout(u::millimetres(100), u::millimetres(100), u::millimetres(4), hole(2));
  CHECK(big.holes.size() == 625);
}

TEST_CASE("ring counts follow the closed form") {
  const auto l = cap(20, 60, 4, 2);
  CHECK(l.rows == 0);
  CHECK_FALSE(l.is_flat());
  CHECK(static_cast<int>(l.holes.size()) == oracle_count(20, deg(60), 4, 2));
  int expected = 1;
  for (int k = 1; k * 4.0 <= 20 * deg(60) - 1.0; ++k) {
    const int n = ly::ring_hole_count(u::millimetres(20), u::millimetres(4), k);
    CHECK(n == static_cast<int>(std::floor(2 * kPi * 20 * std::sin(k * 4.0 / 20) / 4)));
    expected += n;
  }
  CHECK(static_cast<int>(l.holes.size()) == expected);
  // Ring k sits at polar angle k l / R.
  CHECK(l.holes[0].center[2] == doctest::Approx(0.020));
  CHECK(l.holes[1].center[2] == doctest::Approx(0.020 * std::cos(0.2)));
}

TEST_CASE("degenerate and narrow caps") {
  CHECK(cap(20, 0.5, 4, 2).holes.size() == 1);
  CHECK(cap(20, 1e-6, 4, 2).holes.size() == 1);
  CHECK(ly::min_center_distance(cap(20, 1, 4, 2)).si() == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(cap(20, 0, 4, 2), DomainError);
  CHECK_THROWS_AS(cap(20, 91, 4, 2), DomainError);
  CHECK_NOTHROW(cap(20, 90, 4, 2));
  CHECK_THROWS_AS(cap(20, 60, 41, 2), DomainError);
  CHECK_THROWS_AS(cap(20, 60, 2, 2), DomainError);
}

TEST_CASE("halving the pitch adds holes") {
  for (double r : {10.0, 20.0, 35.0}) {
    for (double half : {30.0, 60.0, 90.0}) {
      for (double l : {3.0, 4.0, 6.0}) {
        const auto coarse = cap(r, half, l, 1);
        const auto fine = cap(r, half, l / 2, 1);
        CHECK(fine.holes.size() > coarse.holes.size());
        CHECK(static_cast<int>(coarse.holes.size()) == oracle_count(r, deg(half), l, 1));
      }
    }
  }
}

TEST_CASE("cap holes lie on the sphere with radial normals") {
  for (double r : {5.0, 20.0, 80.0}) {
    for (double l : {2.0, 3.5, 5.0}) {
      const auto lay = cap(r, 75, l, 1);
      const double rm = r * 1e-3;
      for (const auto& h : lay.holes) {
        CHECK(std::abs(norm(h.center) - rm) < 1e-9 * rm);
        const double n = norm(h.center);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(h.normal[i] - h.center[i] / n) < 1e-12);
        CHECK(h.center[2] >= rm * std::cos(deg(75)) - 1e-12);
      }
    }
  }
}

TEST_CASE("no overlapping footprints and ring spacing") {
  for (double l : {2.0, 3.0, 4.0, 6.0}) {
    const auto lay = cap(20, 60, l, 1);
    CHECK(u::in_mm(ly::min_center_distance(lay)) > std::sqrt(2.0));
    const auto flat = ly::flat_layout(u::millimetres(30), u::millimetres(20), u::millimetres(l), hole(1));
    CHECK(u::in_mm(ly::min_center_distance(flat)) > std::sqrt(2.0));
    CHECK(u::in_mm(ly::min_center_distance(flat)) == doctest::Approx(l));
  }
  // Neighbouring rings are a pitch apart along the meridian.
  const auto lay = cap(20, 60, 4, 2);
  const double r = 0.020;
  double prev_polar = 0.0;
  for (std::size_t i = 1; i < lay.holes.size(); ++i) {
    const double polar = std::acos(std::clamp(lay.holes[i].center[2] / r, -1.0, 1.0));
    if (polar > prev_polar + 1e-9) {
      CHECK((polar - prev_polar) * r * 1e3 == doctest::Approx(4.0));
      prev_polar = polar;
    }
  }
}

TEST_CASE("coverage") {
  const auto fine = cap(20, 60, 2, 1);
  const auto rep = ly::verify_coverage(fine, u::millimetres(1));
  CHECK(rep.applicable);
  CHECK(rep.passed);
  CHECK(u::in_mm(rep.required_radius) == doctest::Approx(std::sqrt(39.0)));
  CHECK(rep.worst_radius <= rep.required_radius);
  CHECK(rep.samples == 10000);
  CHECK(rep.samples_per_mm2 > 0.0);

  // Pitch beyond the contact chord leaves uncovered patches.
  const auto sparse = cap(20, 60, 14, 2);
  CHECK_FALSE(ly::verify_coverage(sparse, u::millimetres(1)).passed);
  CHECK_FALSE(ly::verify_coverage(fine, u::millimetres(0)).passed);

  const auto flat = ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(4), hole(2));
  const auto na = ly::verify_coverage(flat, u::millimetres(1));
  CHECK_FALSE(na.applicable);
  CHECK_FALSE(na.passed);
  CHECK_FALSE(na.note.empty());
}

TEST_CASE("coverage is monotone in the pitch") {
  for (double r : {15.0, 20.0, 40.0}) {
    for (double half : {45.0, 60.0, 90.0}) {
      for (double delta : {0.3, 0.6, 1.0}) {
        CAPTURE(r);
        CAPTURE(half);
        CAPTURE(delta);
        // Walk from coarse to fine: once passing, every finer pitch passes.
        bool seen_pass = false;
        for (double l = 12.0; l >= 1.6; l -= 0.2) {
          CAPTURE(l);
          const bool ok = ly::verify_coverage(cap(r, half, l, 1), u::millimetres(delta), 2000).passed;
          if (seen_pass) CHECK(ok);
          seen_pass = seen_pass || ok;
        }
        CHECK(seen_pass);
      }
    }
  }
}

TEST_CASE("csv and json export") {
  const auto flat = ly::flat_layout(u::millimetres(14), u::millimetres(14), u::millimetres(4), hole(2));
  const auto csv = ly::to_csv(flat);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.rfind("x_mm,y_mm,z_mm,nx,ny,nz\n", 0) == 0);
  CHECK(csv.find("\n3.000000,3.000000,6.000000,") != std::string::npos);
  CHECK(csv.find("-0.") == std::string::npos);
  CHECK(ly::export_layout(flat, ly::ExportFormat::csv) == csv);

  const auto j = ly::to_json(flat);
  CHECK(j.dump() == ly::to_json(flat).dump());
  CHECK(ly::export_layout(cap(20, 60, 4, 2), ly::ExportFormat::json) ==
        ly::export_layout(cap(20, 60, 4, 2), ly::ExportFormat::json));

  CHECK(ly::parse_export_format("csv") == ly::ExportFormat::csv);
  CHECK(ly::parse_export_format("json") == ly::ExportFormat::json);
  CHECK(ly::parse_export_format("stl") == ly::ExportFormat::stl);
  CHECK_THROWS_AS(ly::parse_export_format("obj"), cartilab::Error);

  ly::Layout empty;
  empty.surface = ly::FlatSurface{u::millimetres(1), u::millimetres(1)};
  CHECK_THROWS_AS(ly::export_layout(empty, ly::ExportFormat::csv), DomainError);
  CHECK_THROWS_AS(ly::export_layout(empty, ly::ExportFormat::json), DomainError);
}

}
