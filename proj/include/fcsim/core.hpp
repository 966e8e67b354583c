#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace fcsim {

// Errors -------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to an operation (negative counts, retiring more units than
/// exist, ...).
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Attempt to take more mass from a Material than it holds.
class InsufficientMassError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration rejected before the first step.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Scenario document that is not well-formed.
class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Time ---------------------------------------------------------------------

using Step = int;

/// Discrete time base. A step covers dt_months months; all configured
/// durations must be whole multiples of dt_months.
class SimClock {
 public:
  SimClock(int dt_months, int horizon_years);

  int dt_months() const { return dt_; }
  Step horizon() const { return horizon_; }
  int month(Step t) const { return t * dt_; }
  bool divides(int months) const { return months % dt_ == 0; }

  /// Converts a duration to steps; throws ConfigError if not a multiple of dt.
  int steps_for(int months) const;

 private:
  int dt_;
  Step horizon_;
};

// Isotopics ----------------------------------------------------------------

enum class Isotope : std::uint8_t { U235, U238, Pu239, Am241, FissionProducts, Other };

inline constexpr std::size_t kIsotopeCount = 6;
inline constexpr std::array<Isotope, kIsotopeCount> kAllIsotopes = {
    Isotope::U235, Isotope::U238, Isotope::Pu239,
    Isotope::Am241, Isotope::FissionProducts, Isotope::Other};

constexpr std::size_t index(Isotope iso) { return static_cast<std::size_t>(iso); }

std::string_view to_string(Isotope iso);
std::optional<Isotope> parse_isotope(std::string_view name);

/// Mass fractions indexed by Isotope.
using Composition = std::array<double, kIsotopeCount>;

/// Named fixed composition. Fractions sum to one within 1e-9.
struct Recipe {
  std::string name;
  Composition fractions{};

  Recipe() = default;
  Recipe(std::string name, Composition fractions);

  double fraction(Isotope iso) const { return fractions[index(iso)]; }
};

/// A quantity of heavy metal (kg) with an isotopic breakdown. Stored as
/// absolute per-isotope masses so mixing and splitting conserve each isotope.
class Material {
 public:
  using Masses = std::array<double, kIsotopeCount>;

  Material() = default;
  static Material from_masses(const Masses& masses);
  static Material from_composition(double mass, const Composition& fractions);
  static Material from_recipe(double mass, const Recipe& recipe) {
    return from_composition(mass, recipe.fractions);
  }

  double mass() const { return mass_; }
  bool empty() const { return mass_ <= 0.0; }
  const Masses& masses() const { return masses_; }
  double isotope_mass(Isotope iso) const { return masses_[index(iso)]; }
  double fraction(Isotope iso) const;
  Composition composition() const;

 private:
  Masses masses_{};
  double mass_ = 0.0;
};

Material mix(const Material& a, const Material& b);

/// Splits off take_kg with the parent's composition. Requests exceeding the
/// held mass by no more than 1e-9 relative are clamped to the full mass.
std::pair<Material, Material> split(const Material& m, double take_kg);

inline double isotope_mass(const Material& m, Isotope iso) { return m.isotope_mass(iso); }

/// Relative tolerance used for mass comparisons throughout the simulator.
inline constexpr double kMassRelTol = 1e-9;

}  // namespace fcsim
