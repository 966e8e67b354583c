#include <gtest/gtest.h>

#include <random>

#include "fcsim/core.hpp"

using namespace fcsim;

namespace {

Material pure(Isotope iso, double kg) {
  Composition c{};
  c[index(iso)] = 1.0;
  return Material::from_composition(kg, c);
}

Material random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Material::Masses m{};
  for (auto& x : m) x = u(rng) < 0.3 ? 0.0 : u(rng) * 1e5;
  return Material::from_masses(m);
}

}  // namespace

TEST(SimClock, AcceptsOnlyMonthlyOrQuarterlySteps) {
  EXPECT_NO_THROW(SimClock(1, 200));
  EXPECT_NO_THROW(SimClock(3, 200));
  EXPECT_THROW(SimClock(2, 200), ConfigError);
  EXPECT_THROW(SimClock(1, 0), ConfigError);
}

TEST(SimClock, HorizonAndMonths) {
  SimClock m(1, 200), q(3, 200);
  EXPECT_EQ(m.horizon(), 2400);
  EXPECT_EQ(q.horizon(), 800);
  EXPECT_EQ(q.month(7), 21);
  EXPECT_EQ(q.steps_for(84), 28);
  EXPECT_THROW(q.steps_for(17), ConfigError);
}

TEST(Recipe, FractionsMustSumToOne) {
  EXPECT_NO_THROW(Recipe("ok", {0.5, 0.5, 0, 0, 0, 0}));
  EXPECT_THROW(Recipe("bad", {0.5, 0.4, 0, 0, 0, 0}), ValueError);
  EXPECT_THROW(Recipe("neg", {1.5, -0.5, 0, 0, 0, 0}), ValueError);
}

TEST(Isotope, NamesRoundTrip) {
  for (auto iso : kAllIsotopes) EXPECT_EQ(parse_isotope(to_string(iso)), iso);
  EXPECT_FALSE(parse_isotope("Xe135").has_value());
}

TEST(Mix, MassWeightedAverage) {
  Material m = mix(pure(Isotope::Pu239, 10), pure(Isotope::U238, 90));
  EXPECT_DOUBLE_EQ(m.mass(), 100.0);
  EXPECT_NEAR(m.fraction(Isotope::Pu239), 0.10, 1e-12);
  EXPECT_NEAR(m.fraction(Isotope::U238), 0.90, 1e-12);
}

TEST(Mix, EmptyIsIdentity) {
  Material a = Material::from_composition(42.0, {0.1, 0.9, 0, 0, 0, 0});
  Material m = mix(a, Material{});
  EXPECT_EQ(m.masses(), a.masses());
  EXPECT_EQ(m.mass(), a.mass());
}

TEST(Mix, UraniumBlend) {
  Material m = mix(Material::from_composition(3, {0.5, 0.5, 0, 0, 0, 0}), pure(Isotope::U235, 1));
  EXPECT_DOUBLE_EQ(m.mass(), 4.0);
  EXPECT_NEAR(m.fraction(Isotope::U235), 0.625, 1e-12);
  EXPECT_NEAR(m.fraction(Isotope::U238), 0.375, 1e-12);
  EXPECT_NEAR(isotope_mass(m, Isotope::U235), 2.5, 1e-12);
}

TEST(Split, TotalAndZeroTakes) {
  Material x = Material::from_composition(100, {0.2, 0.8, 0, 0, 0, 0});
  auto [all, none] = split(x, 100);
  EXPECT_DOUBLE_EQ(all.mass(), 100);
  EXPECT_DOUBLE_EQ(none.mass(), 0);
  auto [zero, rest] = split(x, 0);
  EXPECT_DOUBLE_EQ(zero.mass(), 0);
  EXPECT_DOUBLE_EQ(rest.mass(), 100);
}

TEST(Split, OneBatchFromLwrCore) {
  Material core = Material::from_composition(88'695, {0.042, 0.958, 0, 0, 0, 0});
  auto [batch, rest] = split(core, 29'565);
  EXPECT_NEAR(batch.mass(), 29'565, 1e-9);
  EXPECT_NEAR(rest.mass(), 59'130, 1e-9);
  EXPECT_NEAR(batch.fraction(Isotope::U235), 0.042, 1e-12);
  EXPECT_NEAR(rest.fraction(Isotope::U235), 0.042, 1e-12);
}

TEST(Split, OverdrawThrows) {
  Material x = pure(Isotope::U238, 10);
  EXPECT_THROW(split(x, 10.1), InsufficientMassError);
  EXPECT_NO_THROW(split(x, 10.0 * (1 + 1e-12)));
}

TEST(IsotopeMass, AbsentIsotopeIsZero) {
  Material x = Material::from_composition(100, {0, 0.9, 0.1, 0, 0, 0});
  EXPECT_NEAR(isotope_mass(x, Isotope::Pu239), 10, 1e-12);
  EXPECT_EQ(isotope_mass(x, Isotope::Am241), 0.0);
}

TEST(MaterialProperty, MixSplitSequencesConserveEveryIsotope) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Material> pool;
    for (int i = 0; i < 5; ++i) pool.push_back(random_material(rng));
    Material::Masses before{};
    for (const auto& m : pool)
      for (auto iso : kAllIsotopes) before[index(iso)] += m.isotope_mass(iso);
    for (int op = 0; op < 50; ++op) {
      const std::size_t i = rng() % pool.size();
      if (u(rng) < 0.5 && pool.size() > 1) {
        std::size_t j = rng() % pool.size();
        if (j == i) continue;
        pool[i] = mix(pool[i], pool[j]);
        pool.erase(pool.begin() + static_cast<long>(j));
      } else {
        auto [a, b] = split(pool[i], pool[i].mass() * u(rng));
        pool[i] = a;
        pool.push_back(b);
      }
    }
    for (auto iso : kAllIsotopes) {
      double after = 0.0;
      for (const auto& m : pool) after += m.isotope_mass(iso);
      EXPECT_NEAR(after, before[index(iso)], 1e-9 * std::max(1.0, before[index(iso)]));
    }
  }
}

TEST(MaterialProperty, SplitThenMixReproducesOriginal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    Material m = random_material(rng);
    auto [a, b] = split(m, m.mass() * u(rng));
    Material back = mix(a, b);
    EXPECT_NEAR(back.mass(), m.mass(), 1e-9 * std::max(1.0, m.mass()));
    for (auto iso : kAllIsotopes) {
      EXPECT_NEAR(back.isotope_mass(iso), m.isotope_mass(iso), 1e-9 * std::max(1.0, m.mass()));
    }
    for (auto x : a.composition()) EXPECT_GE(x, 0.0);
  }
}
