#pragma once

// Dimension-checked scalar quantities.
//
// Values are stored in SI. `Quantity<D>` checks dimensions at compile time and
// is what the model code uses; `Measure` carries a runtime unit and is what
// config files and command-line flags are parsed into.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartilab/error.hpp"

namespace cartilab::units {

/// Exponents of mass, length and time.
struct Dimension {
  int mass = 0;
  int length = 0;
  int time = 0;

  friend constexpr bool operator==(Dimension, Dimension) = default;
};

constexpr Dimension operator*(Dimension a, Dimension b) {
  return {a.mass + b.mass, a.length + b.length, a.time + b.time};
}
constexpr Dimension operator/(Dimension a, Dimension b) {
  return {a.mass - b.mass, a.length - b.length, a.time - b.time};
}

namespace dim {
inline constexpr Dimension none{};
inline constexpr Dimension mass{1, 0, 0};
inline constexpr Dimension length{0, 1, 0};
inline constexpr Dimension area{0, 2, 0};
inline constexpr Dimension volume{0, 3, 0};
inline constexpr Dimension acceleration{0, 1, -2};
inline constexpr Dimension force{1, 1, -2};
inline constexpr Dimension pressure{1, -1, -2};
// N/m per metre of length; same exponents as pressure.
inline constexpr Dimension stiffness_per_length = force / length / length;
}  // namespace dim

/// Human-readable name of a dimension ("length", "pressure", ...).
std::string dimension_name(Dimension d);

template <Dimension D>
class Quantity {
 public:
  static constexpr Dimension dimension = D;

  constexpr Quantity() = default;

  static constexpr Quantity from_si(double v) {
    Quantity q;
    q.si_ = v;
    return q;
  }

  constexpr double si() const { return si_; }

  constexpr explicit(D != dim::none) operator double() const { return si_; }

  constexpr Quantity operator-() const { return from_si(-si_); }
  constexpr Quantity& operator+=(Quantity o) {
    si_ += o.si_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    si_ -= o.si_;
    return *this;
  }
  constexpr Quantity& operator*=(double k) {
    si_ *= k;
    return *this;
  }
  constexpr Quantity& operator/=(double k) {
    si_ /= k;
    return *this;
  }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return from_si(a.si_ + b.si_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return from_si(a.si_ - b.si_); }
  friend constexpr Quantity operator*(Quantity a, double k) { return from_si(a.si_ * k); }
  friend constexpr Quantity operator*(double k, Quantity a) { return from_si(a.si_ * k); }
  friend constexpr Quantity operator/(Quantity a, double k) { return from_si(a.si_ / k); }

  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double si_ = 0.0;
};

// Products and quotients that cancel to a pure number decay to double.
template <Dimension A, Dimension B>
constexpr auto operator*(Quantity<A> a, Quantity<B> b) {
  if constexpr (A * B == dim::none) {
    return a.si() * b.si();
  } else {
    return Quantity<A * B>::from_si(a.si() * b.si());
  }
}

template <Dimension A, Dimension B>
constexpr auto operator/(Quantity<A> a, Quantity<B> b) {
  if constexpr (A / B == dim::none) {
    return a.si() / b.si();
  } else {
    return Quantity<A / B>::from_si(a.si() / b.si());
  }
}

template <Dimension D>
constexpr Quantity<dim::none / D> operator/(double k, Quantity<D> q) {
  return Quantity<dim::none / D>::from_si(k / q.si());
}

using Dimensionless = Quantity<dim::none>;
using Mass = Quantity<dim::mass>;
using Length = Quantity<dim::length>;
using Area = Quantity<dim::area>;
using Volume = Quantity<dim::volume>;
using Acceleration = Quantity<dim::acceleration>;
using Force = Quantity<dim::force>;
using Pressure = Quantity<dim::pressure>;
using StiffnessPerLength = Quantity<dim::stiffness_per_length>;

inline constexpr double kStandardGravity = 9.80665;     // m/s^2
inline constexpr double kKilogramsPerPound = 0.45359237;  // exact by definition

// Constructors in the units the toolkit deals in. kgf uses standard gravity;
// use UnitSystem for a configured gravity.
constexpr Length metres(double v) { return Length::from_si(v); }
constexpr Length centimetres(double v) { return Length::from_si(v * 1e-2); }
constexpr Length millimetres(double v) { return Length::from_si(v * 1e-3); }
constexpr Area square_centimetres(double v) { return Area::from_si(v * 1e-4); }
constexpr Area square_millimetres(double v) { return Area::from_si(v * 1e-6); }
constexpr Volume cubic_centimetres(double v) { return Volume::from_si(v * 1e-6); }
constexpr Volume cubic_millimetres(double v) { return Volume::from_si(v * 1e-9); }
constexpr Mass kilograms(double v) { return Mass::from_si(v); }
constexpr Mass grams(double v) { return Mass::from_si(v * 1e-3); }
constexpr Mass pounds(double v) { return Mass::from_si(v * kKilogramsPerPound); }
constexpr Force newtons(double v) { return Force::from_si(v); }
constexpr Force kilograms_force(double v) { return Force::from_si(v * kStandardGravity); }
constexpr Pressure pascals(double v) { return Pressure::from_si(v); }
constexpr Pressure megapascals(double v) { return Pressure::from_si(v * 1e6); }
constexpr Pressure kgf_per_cm2(double v) { return Pressure::from_si(v * kStandardGravity * 1e4); }

constexpr double in_mm(Length l) { return l.si() * 1e3; }
constexpr double in_cm(Length l) { return l.si() * 1e2; }
constexpr double in_cm2(Area a) { return a.si() * 1e4; }
constexpr double in_cm3(Volume v) { return v.si() * 1e6; }
constexpr double in_mm3(Volume v) { return v.si() * 1e9; }
constexpr double in_grams(Mass m) { return m.si() * 1e3; }
constexpr double in_kgf(Force f) { return f.si() / kStandardGravity; }
constexpr double in_mpa(Pressure p) { return p.si() * 1e-6; }
constexpr double in_kgf_per_cm2(Pressure p) { return p.si() / (kStandardGravity * 1e4); }

/// A named unit: `value_in_unit * to_si` is the SI value.
struct Unit {
  std::string symbol;
  Dimension dimension;
  double to_si = 1.0;
};

enum class UnitMode { si, paper };

std::string_view to_string(UnitMode mode);
UnitMode parse_unit_mode(std::string_view text);

/// Unit table plus the gravity that ties kgf to kg.
class UnitSystem {
 public:
  UnitSystem() = default;
  explicit UnitSystem(UnitMode mode, double gravity = kStandardGravity);

  UnitMode mode() const { return mode_; }
  double gravity() const { return gravity_; }

  /// Exact, case-sensitive lookup. Recognised symbols: mm cm m mm2 cm2 m2 mm3
  /// cm3 m3 g kg lb N kgf Pa kPa MPa kgf/cm2 N/mm2, and "1" for dimensionless.
  std::optional<Unit> find(std::string_view symbol) const;
  /// Like find() but throws Error for unknown symbols.
  Unit unit(std::string_view symbol) const;

  std::vector<std::string> symbols() const;

  // Preferred display unit per dimension for this mode.
  std::string display_symbol(Dimension d) const;

  /// Value of `q` in unit `symbol`; throws DimensionError on mismatch.
  template <Dimension D>
  double express(Quantity<D> q, std::string_view symbol) const {
    return express_si(q.si(), D, symbol);
  }
  template <Dimension D>
  double display(Quantity<D> q) const {
    return express_si(q.si(), D, display_symbol(D));
  }
  template <Dimension D>
  Quantity<D> make(double value, std::string_view symbol) const {
    return Quantity<D>::from_si(to_si(value, D, symbol));
  }

  double express_si(double si_value, Dimension d, std::string_view symbol) const;
  double to_si(double value, Dimension d, std::string_view symbol) const;

 private:
  UnitMode mode_ = UnitMode::paper;
  double gravity_ = kStandardGravity;
};

/// A value tagged with a runtime unit.
class Measure {
 public:
  Measure(double value, Unit unit) : value_(value), unit_(std::move(unit)) {}

  double value() const { return value_; }
  const Unit& unit() const { return unit_; }
  Dimension dimension() const { return unit_.dimension; }
  double si() const { return value_ * unit_.to_si; }

  template <Dimension D>
  Quantity<D> as() const {
    if (unit_.dimension != D) {
      throw DimensionError("expected " + dimension_name(D) + ", got " +
                           dimension_name(unit_.dimension) + " (" + unit_.symbol + ")");
    }
    return Quantity<D>::from_si(si());
  }

  std::string to_string() const;

  // Sum is expressed in the left operand's unit.
  friend Measure operator+(const Measure& a, const Measure& b);
  friend Measure operator-(const Measure& a, const Measure& b);
  // Products and quotients are expressed in SI base units.
  friend Measure operator*(const Measure& a, const Measure& b);
  friend Measure operator/(const Measure& a, const Measure& b);

 private:
  double value_;
  Unit unit_;
};

Measure convert(const Measure& q, std::string_view target, const UnitSystem& sys);
Measure convert(const Measure& q, const Unit& target);

/// Parses "<number> <unit>", e.g. "3 kgf/cm2" or "0.4 cm".
Measure parse_measure(std::string_view text, const UnitSystem& sys);

/// Load exerted by a resting mass. Stored as m*g newtons; under paper units
/// the kgf display value equals the mass in kg.
Force mass_to_load(Mass m, const UnitSystem& sys = UnitSystem{});

}  // namespace cartilab::units
