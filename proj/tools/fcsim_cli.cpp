// Command-line front end. Talks to the simulator only through the C API.
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fcsim/fcsim.h"

#ifndef FCSIM_DEFAULT_SCENARIO_DIR
#define FCSIM_DEFAULT_SCENARIO_DIR "scenarios"
#endif

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string fuel_sharing;  // "", "on" or "off"
  bool quiet = false;
};

int report(fcs_status s, const std::string& context) {
  if (s == FCS_OK) return 0;
  fmt::print(stderr, "error: {}: {}\n", context, fcs_last_error());
  return static_cast<int>(s);
}

void print_summary(const std::string& label, const fcs_summary& s) {
  fmt::print("{}: steps={} dt={}mo generated={:.1f} MWe-mo outage={:.1f} MWe-mo wasted={:.1f} "
             "batch-mo bound={:.3f} GWe-mo shortage_steps={} max_residual={:.3e} kg",
             label, s.steps, s.dt_months, s.generated_MWe_months, s.cumulative_outage_MWe_months,
             s.cumulative_wasted_batch_months, s.fuel_sharing_bound_GWe_months, s.shortage_steps,
             s.max_balance_residual_kg);
  if (s.wall_seconds > 0.0) fmt::print(" wall={:.2f}s", s.wall_seconds);
  fmt::print("\n");
}

// Loads, applies overrides and runs one scenario.
int run_one(const std::string& path, const std::string& out, const Overrides& o,
            fcs_summary* summary, std::string* label) {
  fcs_scenario* sc = nullptr;
  if (int rc = report(fcs_scenario_load(path.c_str(), &sc), path)) return rc;
  if (o.seed) fcs_scenario_set_seed(sc, *o.seed);
  if (!o.fuel_sharing.empty()) fcs_scenario_set_fuel_sharing(sc, o.fuel_sharing == "on");
  *label = fcs_scenario_case_id(sc);
  const int rc = report(fcs_run(sc, out.c_str(), summary), path);
  fcs_scenario_free(sc);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuel cycle transition simulator"};
  app.require_subcommand(1);
  Overrides o;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Tie-break seed override");
  app.add_option("--fuel-sharing-pref", o.fuel_sharing, "Fuel-sharing request preference")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--quiet", o.quiet, "Suppress the summary line");
  app.add_flag_callback("--version", [] {
    fmt::print("fcsim {}\n", fcs_version());
    std::exit(0);
  });

  std::string scenario, out, suite = "eg23", scenario_dir = FCSIM_DEFAULT_SCENARIO_DIR, in;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", scenario, "Scenario file")->required();
  run->add_option("--out", out, "Output directory")->required();

  auto* run_all = app.add_subcommand("run-all", "Run the four cases of a suite concurrently");
  run_all->add_option("--suite", suite, "Suite name")->capture_default_str();
  run_all->add_option("--out", out, "Output directory; one subdirectory per case")->required();
  run_all->add_option("--scenario-dir", scenario_dir, "Directory holding <suite>_<case>.json")
      ->capture_default_str();

  auto* metrics = app.add_subcommand("metrics", "Recompute metrics for a finished run");
  metrics->add_option("--in", in, "Run directory")->required();

  // Options given after the subcommand are accepted too.
  for (auto* sub : {run, run_all, metrics}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) o.seed = seed;

  if (*run) {
    fcs_summary s{};
    std::string label;
    if (int rc = run_one(scenario, out, o, &s, &label)) return rc;
    if (!o.quiet) print_summary(label, s);
    return 0;
  }

  if (*run_all) {
    const std::vector<std::string> cases = {"MI", "MF", "QI", "QF"};
    std::vector<fcs_summary> summaries(cases.size());
    std::vector<std::string> labels(cases.size());
    std::vector<int> codes(cases.size(), 0);
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      workers.emplace_back([&, i] {
        const auto path =
            std::filesystem::path(scenario_dir) / fmt::format("{}_{}.json", suite, cases[i]);
        const auto dir = std::filesystem::path(out) / cases[i];
        codes[i] = run_one(path.string(), dir.string(), o, &summaries[i], &labels[i]);
      });
    }
    for (auto& w : workers) w.join();
    int rc = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      if (codes[i] != 0) {
        rc = codes[i];
      } else if (!o.quiet) {
        print_summary(labels[i], summaries[i]);
      }
    }
    return rc;
  }

  fcs_summary s{};
  if (int rc = report(fcs_metrics(in.c_str(), &s), in)) return rc;
  if (!o.quiet) print_summary(in, s);
  return 0;
}
