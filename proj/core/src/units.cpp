#include "cartilab/units.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace cartilab::units {

namespace {

struct UnitRow {
  std::string_view symbol;
  Dimension dimension;
  double to_si;  // 0 marks kgf-based rows, scaled by gravity
  int kgf_power;
};

constexpr std::array<UnitRow, 19> kUnits{{
    {"1", dim::none, 1.0, 0},
    {"mm", dim::length, 1e-3, 0},
    {"cm", dim::length, 1e-2, 0},
    {"m", dim::length, 1.0, 0},
    {"mm2", dim::area, 1e-6, 0},
    {"cm2", dim::area, 1e-4, 0},
    {"m2", dim::area, 1.0, 0},
    {"mm3", dim::volume, 1e-9, 0},
    {"cm3", dim::volume, 1e-6, 0},
    {"m3", dim::volume, 1.0, 0},
    {"g", dim::mass, 1e-3, 0},
    {"kg", dim::mass, 1.0, 0},
    {"lb", dim::mass, kKilogramsPerPound, 0},
    {"N", dim::force, 1.0, 0},
    {"kgf", dim::force, 1.0, 1},
    {"Pa", dim::pressure, 1.0, 0},
    {"kPa", dim::pressure, 1e3, 0},
    {"MPa", dim::pressure, 1e6, 0},
    {"kgf/cm2", dim::pressure, 1e4, 1},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string si_symbol(Dimension d) {
  std::string out;
  auto term = [&out](std::string_view base, int exp) {
    if (exp == 0) return;
    if (!out.empty()) out += "*";
    out += base;
    if (exp != 1) out += "^" + std::to_string(exp);
  };
  term("kg", d.mass);
  term("m", d.length);
  term("s", d.time);
  return out.empty() ? "1" : out;
}

}  // namespace

std::string dimension_name(Dimension d) {
  if (d == dim::none) return "dimensionless";
  if (d == dim::mass) return "mass";
  if (d == dim::length) return "length";
  if (d == dim::area) return "area";
  if (d == dim::volume) return "volume";
  if (d == dim::acceleration) return "acceleration";
  if (d == dim::force) return "force";
  if (d == dim::pressure) return "pressure";
  return "[" + si_symbol(d) + "]";
}

std::string_view to_string(UnitMode mode) { return mode == UnitMode::si ? "si" : "paper"; }

UnitMode parse_unit_mode(std::string_view text) {
  if (text == "si") return UnitMode::si;
  if (text == "paper") return UnitMode::paper;
  throw Error(fmt::format("unknown unit system '{}' (expected 'paper' or 'si')", text));
}

UnitSystem::UnitSystem(UnitMode mode, double gravity) : mode_(mode), gravity_(gravity) {
  if (!(gravity > 0.0) || !std::isfinite(gravity)) {
    throw DomainError(fmt::format("gravity must be positive, got {}", gravity));
  }
}

std::optional<Unit> UnitSystem::find(std::string_view symbol) const {
  for (const auto& row : kUnits) {
    if (row.symbol == symbol) {
      double scale = row.to_si;
      for (int i = 0; i < row.kgf_power; ++i) scale *= gravity_;
      return Unit{std::string(row.symbol), row.dimension, scale};
    }
  }
  if (symbol == "N/mm2") return Unit{"N/mm2", dim::stiffness_per_length, 1e6};
  return std::nullopt;
}

Unit UnitSystem::unit(std::string_view symbol) const {
  auto u = find(symbol);
  if (!u) throw Error(fmt::format("unknown unit '{}'", symbol));
  return *u;
}

std::vector<std::string> UnitSystem::symbols() const {
  std::vector<std::string> out;
  for (const auto& row : kUnits) out.emplace_back(row.symbol);
  out.emplace_back("N/mm2");
  return out;
}

std::string UnitSystem::display_symbol(Dimension d) const {
  const bool paper = mode_ == UnitMode::paper;
  if (d == dim::none) return "1";
  if (d == dim::length) return paper ? "cm" : "mm";
  if (d == dim::area) return paper ? "cm2" : "mm2";
  if (d == dim::volume) return paper ? "cm3" : "mm3";
  if (d == dim::mass) return paper ? "g" : "kg";
  if (d == dim::force) return paper ? "kgf" : "N";
  if (d == dim::pressure) return paper ? "kgf/cm2" : "MPa";
  throw DimensionError("no display unit for " + dimension_name(d));
}

double UnitSystem::express_si(double si_value, Dimension d, std::string_view symbol) const {
  const Unit u = unit(symbol);
  if (u.dimension != d) {
    throw DimensionError(fmt::format("cannot express {} in '{}' ({})", dimension_name(d), symbol,
                                     dimension_name(u.dimension)));
  }
  return si_value / u.to_si;
}

double UnitSystem::to_si(double value, Dimension d, std::string_view symbol) const {
  const Unit u = unit(symbol);
  if (u.dimension != d) {
    throw DimensionError(fmt::format("'{}' is a {} unit, expected {}", symbol,
                                     dimension_name(u.dimension), dimension_name(d)));
  }
  return value * u.to_si;
}

std::string Measure::to_string() const {
  return fmt::format("{} {}", value_, unit_.symbol);
}

Measure operator+(const Measure& a, const Measure& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(fmt::format("cannot add {} and {}", dimension_name(a.dimension()),
                                     dimension_name(b.dimension())));
  }
  return Measure(a.value_ + b.si() / a.unit_.to_si, a.unit_);
}

Measure operator-(const Measure& a, const Measure& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(fmt::format("cannot subtract {} from {}", dimension_name(b.dimension()),
                                     dimension_name(a.dimension())));
  }
  return Measure(a.value_ - b.si() / a.unit_.to_si, a.unit_);
}

Measure operator*(const Measure& a, const Measure& b) {
  const Dimension d = a.dimension() * b.dimension();
  return Measure(a.si() * b.si(), Unit{si_symbol(d), d, 1.0});
}

Measure operator/(const Measure& a, const Measure& b) {
  const Dimension d = a.dimension() / b.dimension();
  return Measure(a.si() / b.si(), Unit{si_symbol(d), d, 1.0});
}

Measure convert(const Measure& q, const Unit& target) {
  if (q.dimension() != target.dimension) {
    throw DimensionError(fmt::format("cannot convert {} ({}) to '{}' ({})",
                                     dimension_name(q.dimension()), q.unit().symbol,
                                     target.symbol, dimension_name(target.dimension)));
  }
  return Measure(q.si() / target.to_si, target);
}

Measure convert(const Measure& q, std::string_view target, const UnitSystem& sys) {
  return convert(q, sys.unit(target));
}

Measure parse_measure(std::string_view text, const UnitSystem& sys) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data()) {
    throw ParseError(fmt::format("expected '<number> <unit>', got '{}'", text));
  }
  const std::string_view rest = trim(s.substr(static_cast<std::size_t>(ptr - s.data())));
  if (rest.empty()) throw ParseError(fmt::format("missing unit in '{}'", text));
  if (!std::isfinite(value)) throw ParseError(fmt::format("non-finite value in '{}'", text));
  return Measure(value, sys.unit(rest));
}

Force mass_to_load(Mass m, const UnitSystem& sys) {
  if (m.si() < 0.0 || !std::isfinite(m.si())) {
    throw DomainError(fmt::format("mass must be non-negative, got {} kg", m.si()));
  }
  return Force::from_si(m.si() * sys.gravity());
}

}  // namespace cartilab::units
