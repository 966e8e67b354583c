#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fcsim/core.hpp"
#include "fcsim/reactor.hpp"

namespace fcsim {

/// Static per-reactor data needed to evaluate the shortage metrics.
struct ReactorInfo {
  FacilityId id;
  std::string name;
  double power_MWe = 0.0;
  int outage_steps = 0;
};

/// Per-reactor history reconstructed from reactor events.
struct ReactorHistory {
  ReactorInfo info;
  Step commission = 0;
  Step end = 0;                      // first step not in the reactor set (retire or horizon)
  std::vector<Step> outage_starts;   // ascending
  std::vector<std::uint8_t> operating;  // O(t) for t in [commission, end)
  std::vector<int> batches;             // N_b(t) for t in [commission, end)

  bool alive(Step t) const { return t >= commission && t < end; }
};

/// Event log of an individual-reactor run.
///
/// Operating-state rule: a reactor operates at step t when the last of its
/// cycle_start / outage_start / shortage_wait / retire events at or before t
/// (file order within a step) is a cycle_start.
class EventLog {
 public:
  EventLog() = default;
  EventLog(Step steps, std::vector<ReactorHistory> reactors)
      : steps_(steps), reactors_(std::move(reactors)) {}

  static EventLog from_events(Step steps, std::span<const ReactorInfo> reactors,
                              std::span<const ReactorEvent> events);

  Step steps() const { return steps_; }
  const std::vector<ReactorHistory>& reactors() const { return reactors_; }

 private:
  Step steps_ = 0;
  std::vector<ReactorHistory> reactors_;
};

/// Capacity (MWe) of reactors that are offline past the end of their normal
/// refueling outage at step t. A reactor that has never had an outage is
/// gated from its commission step.
double outage_power(Step t, const EventLog& log);

/// Fresh batches held by reactors that are shortage-offline at step t,
/// counted since the start of their most recent outage (or commission).
double wasted_batches(Step t, const EventLog& log);

std::vector<double> outage_power_series(const EventLog& log);
std::vector<double> wasted_batches_series(const EventLog& log);

/// Fleet runs: shortage is installed minus generated capacity.
std::vector<double> fleet_outage_power(std::span<const double> installed_MWe,
                                       std::span<const double> generated_MWe);

/// Wasted batch-months times unit power, in GWe-months.
double fuel_sharing_energy_bound(double wasted_batch_months, double power_MWe);

/// Pointwise ratio; entries with a zero curve value are NaN.
std::vector<double> normalized_power(std::span<const double> series,
                                     std::span<const double> curve);

/// Running sum of series[i] * scale.
std::vector<double> cumulative(std::span<const double> series, double scale = 1.0);

struct MetricsSummary {
  std::string case_id;
  std::string paradigm;
  int dt_months = 0;
  Step steps = 0;
  double generated_MWe_months = 0.0;
  double cumulative_outage_MWe_months = 0.0;
  double cumulative_wasted_batch_months = 0.0;
  double fuel_sharing_bound_GWe_months = 0.0;
  int shortage_steps = 0;
  int first_shortage_month = -1;
  int last_shortage_month = -1;
  double max_balance_residual_kg = 0.0;
};

/// Reads the tables of a finished run, writes metrics.csv and
/// metrics_summary.csv into the same directory and returns the summary.
MetricsSummary compute_metrics(const std::filesystem::path& run_dir);

/// Loads the event log persisted in a run directory.
EventLog load_event_log(const std::filesystem::path& run_dir);

}  // namespace fcsim
