#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "cartilab/error.hpp"
#include "cartilab/exudation.hpp"
#include "cartilab/presets.hpp"

namespace u = cartilab::units;
namespace ex = cartilab::exudation;
namespace el = cartilab::elasticity;
using Q = boost::multiprecision::cpp_rational;
using cartilab::DomainError;

namespace {

bool rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

double d(const Q& q) { return static_cast<double>(q); }

// Exact sheet exudation in cm^3, with a, b, h in cm, E in kgf/cm^2, W in kgf.
struct ExactInputs {
  Q a, b, h, nu, e, w;
  int x;
};

Q exact_sheet_total(const ExactInputs& in) {
  const Q g = in.e / (2 * (1 + in.nu));
  const Q s = (in.a * in.a - in.b * in.b) / (4 * in.b * in.h);
  const Q eap = g * (4 + Q(329, 100) * s * s);
  const Q delta = (in.w / in.x) * in.h / (eap * (in.a * in.a - in.b * in.b));
  const Q per_cell = (in.nu * in.a * in.a + in.b * in.b - in.nu * in.b * in.b) * delta;
  return per_cell * in.x;
}

el::SheetAssembly to_sheet(const ExactInputs& in) {
  el::SheetAssembly s;
  s.cell = {u::centimetres(d(in.a)), u::centimetres(d(in.b)), u::centimetres(d(in.h))};
  s.cell_count = in.x;
  s.material.young_modulus = u::kgf_per_cm2(d(in.e));
  s.material.poisson_ratio = d(in.nu);
  return s;
}

}  // namespace

TEST_SUITE("exudation") {

TEST_CASE("axial and lateral terms at the quoted deflection") {
  const auto delta = u::centimetres(0.8995);
  CHECK(u::in_cm3(ex::axial_exudation(u::centimetres(0.2), delta)) == doctest::Approx(0.035980).epsilon(1e-5));
  CHECK(u::in_cm3(ex::lateral_exudation(0.5, u::centimetres(0.4), u::centimetres(0.2), delta)) ==
        doctest::Approx(0.053970).epsilon(1e-5));
  const auto t = ex::total_exudation(0.5, u::centimetres(0.4), u::centimetres(0.2), delta);
  CHECK(u::in_cm3(t.total) == doctest::Approx(0.089950).epsilon(1e-5));
  CHECK(9 * u::in_cm3(t.total) == doctest::Approx(0.80955).epsilon(1e-5));
  CHECK(t.total == t.axial + t.lateral);
  CHECK(t.per_cell);
}

TEST_CASE("degenerate inputs give zero") {
  CHECK(ex::axial_exudation(u::Length{}, u::centimetres(1.0)).si() == 0.0);
  CHECK(ex::axial_exudation(u::centimetres(0.2), u::Length{}).si() == 0.0);
  CHECK(ex::lateral_exudation(0.0, u::centimetres(0.4), u::centimetres(0.2), u::centimetres(1.0)).si() == 0.0);
  CHECK(ex::lateral_exudation(0.5, u::centimetres(0.4), u::centimetres(0.4), u::centimetres(1.0)).si() == 0.0);
  const auto t = ex::total_exudation(0.5, u::centimetres(0.4), u::Length{}, u::centimetres(1.0));
  CHECK(rel(u::in_cm3(t.total), 0.5 * 0.16, 1e-14));
  CHECK_THROWS_AS(ex::lateral_exudation(0.6, u::centimetres(0.4), u::centimetres(0.2), u::centimetres(1.0)), DomainError);
  CHECK_THROWS_AS(ex::axial_exudation(u::centimetres(0.2), u::centimetres(-1.0)), DomainError);
}

TEST_CASE("nine-cell sheet at 6.8 kgf") {
  const auto s = cartilab::presets::kgf_assembly();
  const auto r = ex::sheet_exudation(s, u::kilograms_force(6.8));
  const ExactInputs in{Q(2, 5), Q(1, 5), Q(3, 5), Q(1, 2), Q(3), Q(34, 5), 9};
  CHECK(rel(u::in_cm3(r.total), d(exact_sheet_total(in)), 1e-12));
  CHECK(rel(u::in_cm3(r.total), 17.0 / 21.0, 5e-3));
  CHECK_FALSE(r.per_cell);
  const auto c = ex::cell_exudation(s, u::kilograms_force(6.8));
  CHECK(rel(u::in_cm3(c.total), 17.0 / 189.0, 5e-3));
  CHECK(rel(9.0 * c.total.si(), r.total.si(), 1e-14));
  CHECK(ex::sheet_exudation(s, u::Force{}).total.si() == 0.0);
}

TEST_CASE("general formula matches an exact rational oracle") {
  std::mt19937_64 rng(2718);
  auto pick = [&](int lo, int hi) { return static_cast<int>(lo + rng() % (hi - lo + 1)); };
  for (int i = 0; i < 500; ++i) {
    ExactInputs in;
    in.a = Q(pick(20, 200), 100);
    in.b = in.a * Q(pick(1, 90), 100);
    in.h = Q(pick(10, 300), 100);
    in.nu = Q(pick(0, 50), 100);
    in.e = Q(pick(1, 500), 10);
    in.w = Q(pick(0, 2000), 100);
    in.x = pick(1, 40);
    const auto r = ex::sheet_exudation(to_sheet(in), u::kilograms_force(d(in.w)));
    const double want = d(exact_sheet_total(in));
    if (want == 0.0) {
      CHECK(r.total.si() == 0.0);
    } else {
      CHECK(rel(u::in_cm3(r.total), want, 1e-12));
    }
    CHECK(r.total == r.axial + r.lateral);
    CHECK(r.axial.si() >= 0.0);
    CHECK(r.lateral.si() >= 0.0);
  }
}

TEST_CASE("linearity in load and independence from cell count") {
  const auto s = cartilab::presets::mpa_assembly();
  const auto w = u::kilograms_force(3.3);
  const auto r1 = ex::sheet_exudation(s, w);
  for (double k : {0.5, 2.0, 7.0}) {
    const auto rk = ex::sheet_exudation(s, k * w);
    CHECK(rel(rk.axial.si(), k * r1.axial.si(), 1e-14));
    CHECK(rel(rk.lateral.si(), k * r1.lateral.si(), 1e-14));
    CHECK(rel(rk.total.si(), k * r1.total.si(), 1e-14));
  }
  for (int x : {1, 4, 9, 25}) {
    auto sx = s;
    sx.cell_count = x;
    CHECK(rel(ex::sheet_exudation(sx, w).total.si(), r1.total.si(), 1e-13));
    // Same load per cell: the total grows with the cell count.
    CHECK(rel(ex::sheet_exudation(sx, w * (x / 9.0)).total.si(), r1.total.si() * x / 9.0, 1e-13));
  }
}

TEST_CASE("monotonicity of the components") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.01, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto a = u::centimetres(0.2 + uni(rng));
    const auto b = a * (0.9 * uni(rng));
    const auto delta = u::centimetres(uni(rng));
    const double nu = 0.5 * uni(rng);
    const auto base = ex::total_exudation(nu, a, b, delta);
    const auto more_delta = ex::total_exudation(nu, a, b, 1.1 * delta);
    CHECK(more_delta.axial >= base.axial);
    CHECK(more_delta.lateral >= base.lateral);
    const auto more_nu = ex::total_exudation(std::min(0.5, nu + 0.01), a, b, delta);
    CHECK(more_nu.lateral >= base.lateral);
    CHECK(more_nu.axial == base.axial);
    const auto more_a = ex::total_exudation(nu, 1.1 * a, b, delta);
    CHECK(more_a.total >= base.total);
    const auto more_b = ex::total_exudation(nu, a, std::min(a, 1.05 * b), delta);
    CHECK(more_b.axial >= base.axial);
    CHECK(more_b.lateral <= base.lateral);
  }
}

TEST_CASE("closed-form constant at the reference load") {
  const auto s = cartilab::presets::kgf_assembly();
  const auto rep = ex::check_paper_constant(s, u::kilograms_force(6.8));
  CHECK(rep.verdict == ex::ConstantVerdict::matches_at_reference_load_only);
  CHECK(rep.rounded_apparent_modulus == doctest::Approx(4.2));
  CHECK(rel(rep.symbolic_coefficient, d(Q(5, 42)), 1e-12));
  CHECK(rel(rep.symbolic_per_cell, d(Q(17, 189)), 1e-12));
  CHECK(rel(rep.symbolic_total, d(Q(17, 21)), 1e-12));
  CHECK(rel(rep.constant_per_cell, d(Q(17, 189)), 1e-12));
  CHECK(rep.constant_matches);
  CHECK_FALSE(rep.literal_matches);
  CHECK(rep.erratum);
  CHECK(rel(rep.matching_load_kgf, 6.8, 1e-12));
  // The unrounded modulus gives 0.13% less.
  CHECK(rel(rep.pipeline_total, 17.0 / 21.0, 2e-3));
}

TEST_CASE("closed-form constant away from the reference load") {
  const auto s = cartilab::presets::kgf_assembly();
  const auto half = ex::check_paper_constant(s, u::kilograms_force(3.4));
  CHECK(half.verdict == ex::ConstantVerdict::discrepancy);
  CHECK(rel(half.symbolic_per_cell, d(Q(17, 378)), 1e-12));
  CHECK_FALSE(half.constant_matches);
  CHECK_FALSE(half.literal_matches);
  CHECK(rel(half.literal_per_cell, d(Q(17, 21) * Q(17, 5) / 9), 1e-12));
  for (double w : {0.5, 1.0, 3.629, 6.804, 10.0}) {
    const auto r = ex::check_paper_constant(s, u::kilograms_force(w));
    CHECK(r.verdict == ex::ConstantVerdict::discrepancy);
    CHECK_FALSE(r.literal_matches);
    CHECK(rel(r.symbolic_per_cell, 5.0 * w / (42.0 * 9), 1e-12));
  }
  auto sixteen = cartilab::presets::kgf_assembly(16);
  const auto r16 = ex::check_paper_constant(sixteen, u::kilograms_force(6.8));
  CHECK(r16.verdict == ex::ConstantVerdict::matches_at_reference_load_only);
  CHECK(rel(r16.constant_per_cell, 17.0 / (21.0 * 16), 1e-12));
}

TEST_CASE("closed-form constant does not apply to other sheets") {
  const auto rep = ex::check_paper_constant(cartilab::presets::mpa_assembly(), u::kilograms_force(6.8));
  CHECK(rep.verdict == ex::ConstantVerdict::not_applicable);
  auto other = cartilab::presets::kgf_assembly();
  other.cell.height = u::centimetres(0.8);
  CHECK(ex::check_paper_constant(other, u::kilograms_force(6.8)).verdict ==
        ex::ConstantVerdict::not_applicable);
}

}
