#include "fcsim/core.hpp"

#include <cmath>
#include <numeric>

namespace fcsim {

SimClock::SimClock(int dt_months, int horizon_years) : dt_(dt_months) {
  if (dt_months != 1 && dt_months != 3) {
    throw ConfigError("time step must be 1 or 3 months, got " + std::to_string(dt_months));
  }
  if (horizon_years <= 0) {
    throw ConfigError("horizon must be positive");
  }
  horizon_ = horizon_years * 12 / dt_;
}

int SimClock::steps_for(int months) const {
  if (months < 0) {
    throw ConfigError("negative duration " + std::to_string(months) + " months");
  }
  if (!divides(months)) {
    throw ConfigError(std::to_string(months) + " months is not a multiple of the " +
                      std::to_string(dt_) + "-month time step");
  }
  return months / dt_;
}

namespace {
constexpr std::array<std::string_view, kIsotopeCount> kIsotopeNames = {
    "U235", "U238", "Pu239", "Am241", "FP", "other"};
}

std::string_view to_string(Isotope iso) { return kIsotopeNames[index(iso)]; }

std::optional<Isotope> parse_isotope(std::string_view name) {
  for (auto iso : kAllIsotopes) {
    if (kIsotopeNames[index(iso)] == name) {
      return iso;
    }
  }
  return std::nullopt;
}

Recipe::Recipe(std::string n, Composition f) : name(std::move(n)), fractions(f) {
  double sum = 0.0;
  for (double x : fractions) {
    if (x < 0.0) {
      throw ValueError("recipe '" + name + "' has a negative fraction");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMassRelTol) {
    throw ValueError("recipe '" + name + "' fractions sum to " + std::to_string(sum));
  }
}

Material Material::from_masses(const Masses& masses) {
  Material m;
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    if (masses[i] < 0.0) {
      throw ValueError("negative isotope mass");
    }
    m.masses_[i] = masses[i];
    m.mass_ += masses[i];
  }
  return m;
}

Material Material::from_composition(double mass, const Composition& fractions) {
  if (mass < 0.0) {
    throw ValueError("negative material mass");
  }
  // The dominant isotope absorbs rounding so the parts add back to `mass`.
  Masses masses{};
  std::size_t dominant = 0;
  double others = 0.0;
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    if (fractions[i] > fractions[dominant]) {
      dominant = i;
    }
  }
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    if (i != dominant) {
      masses[i] = mass * fractions[i];
      others += masses[i];
    }
  }
  masses[dominant] = std::max(0.0, mass - others);
  return from_masses(masses);
}

double Material::fraction(Isotope iso) const {
  return mass_ > 0.0 ? masses_[index(iso)] / mass_ : 0.0;
}

Composition Material::composition() const {
  Composition c{};
  if (mass_ > 0.0) {
    for (std::size_t i = 0; i < kIsotopeCount; ++i) {
      c[i] = masses_[i] / mass_;
    }
  }
  return c;
}

Material mix(const Material& a, const Material& b) {
  Material::Masses sum{};
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    sum[i] = a.masses()[i] + b.masses()[i];
  }
  return Material::from_masses(sum);
}

std::pair<Material, Material> split(const Material& m, double take_kg) {
  if (take_kg < 0.0) {
    throw ValueError("cannot take a negative mass");
  }
  if (take_kg > m.mass()) {
    if (take_kg - m.mass() > kMassRelTol * std::max(1.0, m.mass())) {
      throw InsufficientMassError("requested " + std::to_string(take_kg) + " kg from " +
                                  std::to_string(m.mass()) + " kg");
    }
    take_kg = m.mass();
  }
  if (take_kg == m.mass()) {
    return {m, Material{}};
  }
  if (take_kg == 0.0) {
    return {Material{}, m};
  }
  const double ratio = take_kg / m.mass();
  Material::Masses taken{};
  Material::Masses rest{};
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    taken[i] = m.masses()[i] * ratio;
    rest[i] = std::max(0.0, m.masses()[i] - taken[i]);
  }
  return {Material::from_masses(taken), Material::from_masses(rest)};
}

}  // namespace fcsim
