#include <gtest/gtest.h>

#include "fcsim/fleet.hpp"

using namespace fcsim;

namespace {

const Recipe kFresh("fresh", {0, 0.86, 0.14, 0, 0, 0});
const Recipe kSpent("spent", {0, 0.79, 0.15, 0.002, 0.058, 0});

ReactorSpec spec(double batch, int n, int cycle, double power) {
  ReactorSpec s;
  s.name = "fleet";
  s.batch_kg = batch;
  s.batches_per_core = n;
  s.cycle_months = cycle;
  s.outage_months = 0;
  s.power_MWe = power;
  s.fresh = kFresh;
  s.spent = kSpent;
  return s;
}

ReactorSpec sfr() { return spec(8'025, 5, 15, 360); }
ReactorSpec lwr() { return spec(29'565, 3, 18, 900); }

ReactorFleet full(const ReactorSpec& s, const SimClock& clock, int units) {
  ReactorFleet f(FacilityId{9}, s, clock);
  f.build(units);
  f.refuel(Material::from_recipe(f.core_capacity(), s.fresh));
  return f;
}

}  // namespace

TEST(Fleet, OperatingUnits) {
  SimClock clock(1, 10);
  ReactorFleet f = full(lwr(), clock, 100);
  EXPECT_DOUBLE_EQ(f.n_operating(), 100);
  ReactorFleet half(FacilityId{9}, lwr(), clock);
  half.build(100);
  half.refuel(Material::from_recipe(half.core_capacity() / 2, kFresh));
  EXPECT_DOUBLE_EQ(half.n_operating(), 50);
  ReactorFleet empty(FacilityId{9}, lwr(), clock);
  EXPECT_EQ(empty.n_operating(), 0.0);
  EXPECT_EQ(empty.generated_power_MWe(), 0.0);
}

TEST(Fleet, DischargeRates) {
  SimClock monthly(1, 10), quarterly(3, 10);
  ReactorFleet s = full(sfr(), monthly, 1);
  EXPECT_DOUBLE_EQ(s.discharge().mass(), 535);
  ReactorFleet l = full(lwr(), quarterly, 1);
  EXPECT_DOUBLE_EQ(l.discharge().mass(), 4'927.5);
}

TEST(Fleet, HalfFueledHalfDischarge) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, sfr(), clock);
  f.build(2);
  f.refuel(Material::from_recipe(f.core_capacity() / 2, kFresh));
  EXPECT_DOUBLE_EQ(f.discharge().mass(), 535);
}

TEST(Fleet, DischargeCarriesSpentComposition) {
  SimClock clock(1, 10);
  ReactorFleet f = full(sfr(), clock, 1);
  Material m = f.discharge();
  EXPECT_NEAR(m.fraction(Isotope::Pu239), 0.15, 1e-12);
}

TEST(Fleet, RefuelLimits) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, spec(10'000, 1, 12, 100), clock);
  f.build(2);
  f.refuel(Material::from_recipe(10'000, kFresh));
  EXPECT_DOUBLE_EQ(f.refuel(Material::from_recipe(4'000, kFresh)), 4'000);
  EXPECT_DOUBLE_EQ(f.refuel(Material::from_recipe(20'000, kFresh)), 6'000);
  EXPECT_DOUBLE_EQ(f.refuel(Material::from_recipe(1'000, kFresh)), 0);
  EXPECT_FALSE(f.request());
}

TEST(Fleet, RequestsEmptySpaceDivisibly) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, sfr(), clock);
  f.build(3);
  auto r = f.request();
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->divisible);
  EXPECT_DOUBLE_EQ(r->quantity, 3 * 40'125);
}

TEST(Fleet, GeneratedPower) {
  SimClock clock(1, 10);
  EXPECT_DOUBLE_EQ(full(lwr(), clock, 100).generated_power_MWe(), 90'000);
}

TEST(Fleet, RetireDischargesFullCores) {
  SimClock clock(1, 10);
  ReactorFleet f = full(sfr(), clock, 3);
  auto r = f.retire(1);
  EXPECT_DOUBLE_EQ(r.discharged.mass(), 40'125);
  EXPECT_EQ(r.overdraw_kg, 0.0);
  EXPECT_EQ(f.units(), 2);
  EXPECT_DOUBLE_EQ(f.core_inventory(), 2 * 40'125);
}

TEST(Fleet, RetireFromHalfFilledFleetClampsAndLogsOverdraw) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, sfr(), clock);
  f.build(2);
  f.refuel(Material::from_recipe(40'125 * 0.5, kFresh));  // 25 % fill
  auto r = f.retire(1);
  EXPECT_DOUBLE_EQ(r.discharged.mass(), 40'125);
  EXPECT_DOUBLE_EQ(r.overdraw_kg, 40'125 * 0.5);
  EXPECT_EQ(f.core_inventory(), 0.0);
  EXPECT_GE(f.core_inventory(), 0.0);
}

TEST(Fleet, BuildThenRetireBookkeeping) {
  SimClock clock(1, 10);
  ReactorFleet f = full(sfr(), clock, 4);
  f.build(2);
  f.refuel(Material::from_recipe(2 * 40'125, kFresh));
  const double before = f.core_inventory();
  f.retire(2);
  EXPECT_DOUBLE_EQ(f.core_inventory(), before - 2 * 40'125);
  EXPECT_DOUBLE_EQ(f.core_capacity(), 4 * 40'125);
}

TEST(Fleet, RetireMoreThanDeployedIsAnError) {
  SimClock clock(1, 10);
  ReactorFleet f = full(sfr(), clock, 1);
  EXPECT_THROW(f.retire(2), ValueError);
  EXPECT_THROW(f.build(-1), ValueError);
}

TEST(Fleet, RetirementQueue) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, sfr(), clock);
  f.schedule_retirement(12, 2);
  f.schedule_retirement(12, 1);
  EXPECT_EQ(f.retirements_due(12), 3);
  EXPECT_EQ(f.retirements_due(11), 0);
}

TEST(Fleet, PowerIsContinuousAndMonotoneInInventory) {
  SimClock clock(1, 10);
  ReactorFleet f(FacilityId{9}, sfr(), clock);
  f.build(10);
  double last = -1;
  for (int i = 0; i <= 100; ++i) {
    f.refuel(Material::from_recipe(f.core_capacity() / 100, kFresh));
    EXPECT_GE(f.generated_power_MWe(), last);
    last = f.generated_power_MWe();
  }
  EXPECT_DOUBLE_EQ(last, 3'600);
}
