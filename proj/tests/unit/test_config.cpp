#include <doctest.h>

#include <filesystem>

#include "cartilab/config.hpp"
#include "cartilab/error.hpp"
#include "cartilab/presets.hpp"

namespace u = cartilab::units;
namespace cf = cartilab::config;
using cartilab::ParseError;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    cf::from_document(cf::parse_document(text));
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

cf::ToolkitConfig from_text(std::string_view text) {
  return cf::from_document(cf::parse_document(text));
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("document reader") {
  const auto doc = cf::parse_document(
      "# leading comment\n"
      "[a]\n"
      "x = 1.5   # trailing\n"
      "\"quoted key\" = \"va#lue \\\"q\\\"\"\n"
      "flag = false\n"
      "\n"
      "[b.c]\n"
      "y = -2e3\n");
  REQUIRE(doc.contains("a"));
  CHECK(std::get<double>(doc.at("a").at("x").data) == 1.5);
  CHECK(doc.at("a").at("x").line == 3);
  CHECK(std::get<std::string>(doc.at("a").at("quoted key").data) == "va#lue \"q\"");
  CHECK(std::get<bool>(doc.at("a").at("flag").data) == false);
  CHECK(std::get<double>(doc.at("b.c").at("y").data) == -2000.0);
}

TEST_CASE("document reader errors carry the line") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      cf::parse_document(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("[a]\nx = 1\nx = 2\n") == 3);
  CHECK(line_of("[a]\n[a]\n") == 2);
  CHECK(line_of("[a\n") == 1);
  CHECK(line_of("[a]\nx = \"open\n") == 2);
  CHECK(line_of("[a]\nx = bare\n") == 2);
  CHECK(line_of("[a]\nx 1\n") == 2);
  CHECK(line_of("[a]\nx =\n") == 2);
  CHECK(line_of("[a]\nx = 1 2\n") == 2);
  CHECK(line_of("[a]\nx = \"\\q\"\n") == 2);
}

TEST_CASE("defaults") {
  const auto c = cf::default_config();
  CHECK(cartilab::presets::is_kgf_preset(c.assembly));
  CHECK(c.assembly.cell_count == 9);
  CHECK(c.unit_system.mode() == u::UnitMode::paper);
  CHECK(u::in_mm(c.center_pitch()) == doctest::Approx(4.0));
  CHECK(u::in_kgf(c.sheet.design_load) == doctest::Approx(6.8));
  CHECK(c.calibration_endpoints().mu_dry == 0.079);
  CHECK(c.calibration_endpoints().mu_wet == 0.053);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("bundled preset file") {
  const std::filesystem::path file = CARTILAB_SOURCE_DIR "/configs/paper_preset.toml";
  const auto c = cf::load_config(file);
  CHECK(cartilab::presets::is_kgf_preset(c.assembly));
  CHECK(u::in_mm(c.center_pitch()) == doctest::Approx(4.0));
  CHECK(c.sim.reservoir.base_sheet);
  CHECK(u::in_cm3(c.sim.reservoir.capsule_pool) == doctest::Approx(2.0));
  CHECK(std::filesystem::exists(c.paths.friction_data));
  CHECK(std::filesystem::exists(c.paths.protocol_base));
  CHECK(std::filesystem::exists(c.paths.protocol_nobase));
  CHECK(c.friction_increments.empty());
}

TEST_CASE("overrides") {
  const auto c = from_text(
      "[units]\nsystem = \"si\"\n"
      "[material]\nyoung_modulus = \"3 MPa\"\n"
      "[cell]\ncount = 16\n"
      "[sheet]\ninterval = \"4 mm\"\ninterval_mode = \"center\"\ndesign_load = \"15 lb\"\n"
      "[sim]\nfilm_threshold = \"20 mm3\"\n"
      "[friction.increments]\n\"film\" = \"10 g\"\n"
      "[paths]\nfriction_data = \"trials.csv\"\n");
  CHECK(c.unit_system.mode() == u::UnitMode::si);
  CHECK(u::in_mpa(c.assembly.material.young_modulus) == doctest::Approx(3.0));
  CHECK(c.assembly.cell_count == 16);
  CHECK(u::in_mm(c.center_pitch()) == doctest::Approx(4.0));
  CHECK(u::in_kgf(c.sheet.design_load) == doctest::Approx(15 * 0.45359237));
  REQUIRE(c.sim.film_threshold.has_value());
  CHECK(u::in_mm3(*c.sim.film_threshold) == doctest::Approx(20));
  CHECK(c.calibration_endpoints().film_threshold == *c.sim.film_threshold);
  CHECK(u::in_grams(c.friction_increments.at("film")) == doctest::Approx(10));
  CHECK(c.paths.friction_data == "trials.csv");

  const auto based = cf::from_document(cf::parse_document("[paths]\nfriction_data = \"t.csv\"\n"), "/x/y");
  CHECK(based.paths.friction_data == std::filesystem::path("/x/y/t.csv"));

  const auto g = from_text("[units]\ngravity = 9.8\n[sheet]\ndesign_load = \"1 kg\"\n");
  CHECK(g.sheet.design_load.si() == doctest::Approx(9.8));
}

TEST_CASE("bad configs name the line") {
  CHECK(error_line("[nope]\nx = 1\n") == 2);
  CHECK(error_line("[cell]\nbogus = 1\n") == 2);
  CHECK(error_line("x = 1\n") == 1);
  CHECK(error_line("[cell]\ncount = 2.5\n") == 2);
  CHECK(error_line("[cell]\nheight = 6\n") == 2);
  CHECK(error_line("[cell]\nheight = \"6 kg\"\n") == 2);
  CHECK(error_line("[cell]\nheight = \"6 furlongs\"\n") == 2);
  CHECK(error_line("[units]\nsystem = \"imperial\"\n") == 2);
  CHECK(error_line("[units]\ngravity = 0\n") == 2);
  CHECK(error_line("[sheet]\ninterval_mode = \"edge\"\n") == 2);
  CHECK(error_line("[sheet]\n\n design_load = \"3 mm\"\n") == 3);
  CHECK(error_line("[sim]\neta = \"1\"\n") == 2);
  CHECK(error_line("[sheet]\nbase_sheet = 1\n") == 2);
  CHECK_THROWS_AS(from_text("[sim]\neta = 1.5\n"), ParseError);
  CHECK_THROWS_AS(from_text("[sim]\nmu_dry = 0.01\n"), ParseError);
  CHECK_THROWS_AS(from_text("[sheet]\ncap_half_angle_deg = 120\n"), ParseError);
  CHECK_THROWS_AS(from_text("[material]\npoisson_ratio = 0.7\n"), ParseError);
  CHECK_THROWS_AS(cf::load_config("/nonexistent/cartilab.toml"), cartilab::Error);
}

}
