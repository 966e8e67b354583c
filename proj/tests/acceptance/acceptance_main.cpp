// Acceptance checks for the simulator. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fcsim/csv.hpp"
#include "fcsim/fleet.hpp"
#include "fcsim/kernel.hpp"
#include "fcsim/metrics.hpp"
#include "fcsim/reactor.hpp"
#include "fcsim/scenario.hpp"
#include "support/oracles.hpp"

using namespace fcsim;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCases = {"MI", "MF", "QI", "QF"};

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
};

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Unconstrained drivers ------------------------------------------------------

struct Driven {
  double months = 0;
  double discharged_kg = 0;
  double energy_MWe_months = 0;
};

// One reactor, refueled with fresh batches whenever it asks, over `periods`
// whole refueling periods from commissioning with a full core.
Driven drive_individual(const ReactorSpec& spec, const SimClock& clock, int periods) {
  Reactor r = Reactor::preloaded(FacilityId{100}, spec, clock, 0, std::nullopt);
  const int period = r.cycle_steps() + r.outage_steps();
  Driven d;
  for (Step t = 0; t < periods * period; ++t) {
    if (const int need = r.lots_needed(); need > 0) {
      r.receive(Material::from_recipe(need * spec.batch_kg, spec.fresh));
    }
    auto out = r.tick(t);
    for (const auto& m : out.discharged) d.discharged_kg += m.mass();
    d.energy_MWe_months += r.generated_power_MWe() * clock.dt_months();
  }
  d.months = static_cast<double>(periods) * period * clock.dt_months();
  return d;
}

// A fleet of units kept full, over `periods` whole refueling periods.
Driven drive_fleet(const ReactorSpec& spec, const SimClock& clock, int units, int periods) {
  ReactorFleet f(FacilityId{9}, spec, clock);
  f.build(units);
  Driven d;
  for (Step t = 0; t < periods * f.period_steps(); ++t) {
    f.refuel(Material::from_recipe(f.core_capacity() - f.core_inventory(), spec.fresh));
    d.energy_MWe_months += f.generated_power_MWe() * clock.dt_months();
    d.discharged_kg += f.discharge().mass();
  }
  d.months = static_cast<double>(periods) * f.period_steps() * clock.dt_months();
  return d;
}

Driven drive(const Scenario& s, const ReactorSpec& spec) {
  const SimClock clock = s.clock();
  if (s.paradigm == Paradigm::Fleet) {
    // Per-unit figures from a 10-unit fleet.
    Driven d = drive_fleet(spec, clock, 10, 20);
    d.discharged_kg /= 10;
    d.energy_MWe_months /= 10;
    return d;
  }
  return drive_individual(spec, clock, 20);
}

Outcome criterion_discharge_rates() {
  Outcome o;
  for (const auto& c : kCases) {
    Scenario s = parse_scenario(testing::bundled_scenario(c));
    const double lwr = drive(s, s.lwr).discharged_kg / drive(s, s.lwr).months;
    const double sfr = drive(s, s.sfr).discharged_kg / drive(s, s.sfr).months;
    o.check(rel_close(lwr, 1642.5, 1e-6), fmt::format("{} LWR {:.6f} kg/mo", c, lwr));
    o.check(rel_close(sfr, 535.0, 1e-6), fmt::format("{} SFR {:.6f} kg/mo", c, sfr));
  }
  return o;
}

Outcome criterion_burnup() {
  Outcome o;
  for (const auto& c : kCases) {
    Scenario s = parse_scenario(testing::bundled_scenario(c));
    const Driven l = drive(s, s.lwr);
    const Driven f = drive(s, s.sfr);
    const double bl = l.energy_MWe_months / l.discharged_kg;
    const double bs = f.energy_MWe_months / f.discharged_kg;
    o.check(rel_close(bl, 0.547945, 1e-3), fmt::format("{} LWR {:.6f}", c, bl));
    o.check(rel_close(bs, 0.672897, 1e-3), fmt::format("{} SFR {:.6f}", c, bs));
  }
  return o;
}

// Quantized shutdown -----------------------------------------------------------

// A 3-batch reactor starts half a batch short; the shortfall is made good one
// month later. Energy over the first three months, in units of P_r.
double shutdown_energy(int dt, Paradigm paradigm) {
  ReactorSpec spec;
  spec.name = "probe";
  spec.batch_kg = 1000;
  spec.batches_per_core = 3;
  spec.cycle_months = 18;
  spec.outage_months = 0;
  spec.power_MWe = 1000;
  spec.fresh = Recipe("fresh", {0.05, 0.95, 0, 0, 0, 0});
  spec.spent = Recipe("spent", {0.01, 0.94, 0.01, 0, 0.04, 0});
  const SimClock clock(dt, 1);
  const int window = 3 / dt;
  const int resolved_month = 1;
  double energy = 0;
  if (paradigm == Paradigm::Fleet) {
    ReactorFleet f(FacilityId{9}, spec, clock);
    f.build(1);
    for (Step t = 0; t < window; ++t) {
      const bool short_supply = clock.month(t) < resolved_month;
      const double space = f.core_capacity() - f.core_inventory();
      const double offered = short_supply ? std::max(0.0, space - 0.5 * spec.batch_kg) : space;
      f.refuel(Material::from_recipe(offered, spec.fresh));
      energy += f.generated_power_MWe() * dt;
      f.discharge();
    }
  } else {
    // Whole batches only: the partial batch cannot be loaded, so two arrive
    // first and the third once the shortfall clears.
    Reactor r(FacilityId{100}, spec, clock, 0);
    for (Step t = 0; t < window; ++t) {
      const bool short_supply = clock.month(t) < resolved_month;
      const int lots = short_supply ? std::max(0, r.lots_needed() - 1) : r.lots_needed();
      if (lots > 0) r.receive(Material::from_recipe(lots * spec.batch_kg, spec.fresh));
      r.tick(t);
      energy += r.generated_power_MWe() * dt;
    }
  }
  return energy / spec.power_MWe;
}

Outcome criterion_quantized_shutdown() {
  Outcome o;
  const std::map<std::string, double> expect = {
      {"QF", 2.5}, {"MF", 17.0 / 6.0}, {"QI", 0.0}, {"MI", 2.0}};
  for (const auto& [c, e] : expect) {
    const int dt = c[0] == 'Q' ? 3 : 1;
    const Paradigm p = c[1] == 'F' ? Paradigm::Fleet : Paradigm::Individual;
    const double got = shutdown_energy(dt, p);
    o.check(std::abs(got - e) <= 1e-12, fmt::format("{} {:.4f} P_r", c, got));
  }
  return o;
}

Outcome criterion_metric_oracle() {
  Outcome o;
  std::mt19937_64 rng(0x5eed);
  const int trials = 1000;
  int mismatches = 0;
  for (int i = 0; i < trials; ++i) {
    auto rl = testing::random_event_log(rng, 10, 100);
    auto log = EventLog::from_events(rl.steps, rl.reactors, rl.events);
    auto p = outage_power_series(log);
    auto w = wasted_batches_series(log);
    for (Step t = 0; t < rl.steps; ++t) {
      if (p[t] != testing::oracle_outage_power(rl, t) ||
          w[t] != testing::oracle_wasted_batches(rl, t)) {
        ++mismatches;
        break;
      }
    }
  }
  o.check(mismatches == 0, fmt::format("{} of {} logs match exactly", trials - mismatches, trials));
  return o;
}

// Full-scenario runs -----------------------------------------------------------

struct SuiteRun {
  fs::path dir;
  RunSummary summary;
};

std::map<std::string, SuiteRun> g_suite;

const SuiteRun& suite(const std::string& c) {
  auto it = g_suite.find(c);
  if (it == g_suite.end()) {
    SuiteRun r;
    r.dir = testing::fresh_dir("accept_" + c);
    r.summary = run(parse_scenario(testing::bundled_scenario(c)), r.dir);
    it = g_suite.emplace(c, std::move(r)).first;
  }
  return it->second;
}

std::vector<double> column(const fs::path& file, const std::string& name) {
  auto t = csv::Table::read(file);
  const auto c = t.column(name);
  std::vector<double> v(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) v[r] = t.real(r, c);
  return v;
}

Outcome criterion_mass_balance() {
  Outcome o;
  for (const auto& c : kCases) {
    const SuiteRun& r = suite(c);
    const auto residual = column(r.dir / "balance.csv", "residual_kg");
    double worst = 0;
    for (double x : residual) worst = std::max(worst, std::abs(x));
    o.check(worst <= 1e-6, fmt::format("{} max residual {:.3g} kg", c, worst));

    // Each overdraw must equal the full-core discharge minus what the cores held,
    // and the overdraws must sum to the balance's overdraw account.
    auto fe = csv::Table::read(r.dir / "fleet_events.csv");
    const auto ck = fe.column("kg"), cb = fe.column("core_inventory_before_kg"),
               co = fe.column("overdraw_kg"), ce = fe.column("event");
    double total = 0;
    int events = 0;
    bool reconciled = true;
    for (std::size_t i = 0; i < fe.rows(); ++i) {
      const double od = fe.real(i, co);
      if (fe.at(i, ce) != "retire" || od <= 0) continue;
      ++events;
      total += od;
      reconciled &= std::abs(fe.real(i, ck) - fe.real(i, cb) - od) <= 1e-6 * fe.real(i, ck);
    }
    const auto account = column(r.dir / "balance.csv", "overdraw_kg");
    const double booked = account.empty() ? 0.0 : account.back();
    reconciled &= std::abs(booked - total) <= 1e-6 * std::max(1.0, total);
    o.check(reconciled, fmt::format("{} {} overdraw events reconcile", c, events));
  }
  return o;
}

struct ShortageStats {
  double mean_pu_outflow = 0;
  double min_pu_inventory = 0;
  int first_shortage_step = -1;
};

ShortageStats shortage_stats(const std::string& c) {
  const fs::path m = suite(c).dir / "metrics.csv";
  const auto outage = column(m, "outage_MWe");
  const auto out = column(m, "pu_outflow_kg");
  const auto inv = column(m, "pu_inventory_kg");
  ShortageStats s;
  s.min_pu_inventory = INFINITY;
  double sum = 0;
  int n = 0;
  for (std::size_t t = 0; t < outage.size(); ++t) {
    if (outage[t] <= 1e-6) continue;
    if (s.first_shortage_step < 0) s.first_shortage_step = static_cast<int>(t);
    sum += out[t];
    ++n;
    s.min_pu_inventory = std::min(s.min_pu_inventory, inv[t]);
  }
  s.mean_pu_outflow = n > 0 ? sum / n : 0;
  return s;
}

Outcome criterion_effect_orderings() {
  Outcome o;
  std::map<std::string, MetricsSummary> m;
  for (const auto& c : kCases) m[c] = suite(c).summary.metrics;
  auto outage = [&](const std::string& c) { return m[c].cumulative_outage_MWe_months; };
  o.check(outage("QI") > outage("MI"), fmt::format("QI {:.0f} > MI {:.0f}", outage("QI"), outage("MI")));
  o.check(outage("QF") > outage("MF"), fmt::format("QF {:.0f} > MF {:.0f}", outage("QF"), outage("MF")));
  o.check(outage("QI") > outage("QF"), fmt::format("QI > QF {:.0f}", outage("QF")));
  o.check(outage("MI") > outage("MF"), fmt::format("MI > MF {:.0f}", outage("MF")));

  const ShortageStats qf = shortage_stats("QF");
  const ShortageStats mf = shortage_stats("MF");
  const double ratio = mf.mean_pu_outflow > 0 ? qf.mean_pu_outflow / mf.mean_pu_outflow : 0;
  o.check(std::abs(ratio - 3.0) <= 0.15,
          fmt::format("QF/MF Pu withdrawal per step {:.3f}", ratio));
  o.check(mf.first_shortage_step >= 0 && qf.min_pu_inventory > mf.min_pu_inventory,
          fmt::format("min Pu inventory QF {:.1f} > MF {:.1f} kg", qf.min_pu_inventory,
                      mf.min_pu_inventory));

  const bool fleets_zero = m["MF"].cumulative_wasted_batch_months == 0 &&
                           m["QF"].cumulative_wasted_batch_months == 0;
  const bool individual_positive = m["MI"].cumulative_wasted_batch_months > 0 &&
                                   m["QI"].cumulative_wasted_batch_months > 0;
  o.check(fleets_zero && individual_positive,
          fmt::format("wasted batch-months MI {:.0f} QI {:.0f} MF {:.0f} QF {:.0f}",
                      m["MI"].cumulative_wasted_batch_months,
                      m["QI"].cumulative_wasted_batch_months,
                      m["MF"].cumulative_wasted_batch_months,
                      m["QF"].cumulative_wasted_batch_months));
  return o;
}

Outcome criterion_fuel_sharing() {
  Outcome o;
  Scenario s = parse_scenario(testing::bundled_scenario("MI"));
  const double base = suite("MI").summary.metrics.cumulative_wasted_batch_months;
  s.fuel_sharing_preference = true;
  const RunSummary shared = run(s, testing::fresh_dir("accept_MI_sharing"));
  const double with = shared.metrics.cumulative_wasted_batch_months;
  o.check(with < base, fmt::format("MI wasted batch-months {:.0f} -> {:.0f}", base, with));

  int instances = 0, mismatches = 0;
  std::vector<int> needs;
  std::function<void(int)> walk = [&](int m) {
    if (!needs.empty()) {
      for (int lots = 0; lots <= 6; ++lots) {
        ++instances;
        if (testing::allocator_fully_fueled(needs, lots, true) !=
            testing::oracle_max_fully_fueled(needs, lots)) {
          ++mismatches;
        }
      }
    }
    if (m == 5) return;
    for (int n = 1; n <= 5; ++n) {
      needs.push_back(n);
      walk(m + 1);
      needs.pop_back();
    }
  };
  walk(0);
  o.check(mismatches == 0,
          fmt::format("{} of {} exhaustive instances match the oracle", instances - mismatches,
                      instances));
  return o;
}

Outcome criterion_performance() {
  Outcome o;
  auto median_wall = [](const std::string& c) {
    Scenario s = parse_scenario(testing::bundled_scenario(c));
    std::vector<double> w;
    for (int i = 0; i < 3; ++i) w.push_back(run(s, testing::fresh_dir("accept_perf_" + c)).wall_seconds);
    std::sort(w.begin(), w.end());
    return w[1];
  };
  const double mi = median_wall("MI");
  const double mf = median_wall("MF");
  o.check(mi < 300 && mf < 300, fmt::format("MI {:.3f}s MF {:.3f}s", mi, mf));
  o.check(mf > 0 && mi / mf >= 3.0, fmt::format("speedup {:.1f}x", mf > 0 ? mi / mf : 0.0));
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  for (const auto& c : kCases) {
    const SuiteRun& first = suite(c);
    const fs::path again = testing::fresh_dir("accept_again_" + c);
    run(parse_scenario(testing::bundled_scenario(c)), again);
    int files = 0;
    bool same = true;
    for (const auto& e : fs::directory_iterator(first.dir)) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      same &= testing::read_file(e.path()) == testing::read_file(again / e.path().filename());
    }
    o.check(same && files > 0, fmt::format("{} {} CSV files identical", c, files));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"unconstrained discharge rates", criterion_discharge_rates},
      {"burnup identity", criterion_burnup},
      {"quantized shutdown energies", criterion_quantized_shutdown},
      {"shortage metrics match replay oracle", criterion_metric_oracle},
      {"mass conservation", criterion_mass_balance},
      {"effect orderings on bundled suite", criterion_effect_orderings},
      {"fuel-sharing mitigation", criterion_fuel_sharing},
      {"fleet speedup", criterion_performance},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    fmt::print("{} {} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
