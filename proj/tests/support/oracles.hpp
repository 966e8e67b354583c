#pragma once

// Reference implementations used only by tests. They are written directly
// from the metric and allocation definitions, favoring clarity over speed.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fcsim/metrics.hpp"
#include "fcsim/reactor.hpp"

namespace fcsim::testing {

struct RandomLog {
  Step steps = 0;
  std::vector<ReactorInfo> reactors;
  std::vector<ReactorEvent> events;  // file order
};

/// Random event log with up to max_reactors reactors over up to max_steps
/// steps. Events are in nondecreasing time order.
RandomLog random_event_log(std::mt19937_64& rng, int max_reactors, int max_steps);

/// Shortage-offline power at t by replaying every event of every reactor.
double oracle_outage_power(const RandomLog& log, Step t);

/// Wasted batches at t by replaying every event of every reactor.
double oracle_wasted_batches(const RandomLog& log, Step t);

/// Largest number of requesters that can be brought to full demand with
/// `lots` whole lots, by enumerating every lot assignment.
int oracle_max_fully_fueled(const std::vector<int>& needs, int lots);

/// Number of requesters brought to full demand by the allocator with the
/// fuel-sharing preference enabled.
int allocator_fully_fueled(const std::vector<int>& needs, int lots, bool fuel_sharing);

/// Fresh, empty directory under the system temp dir.
std::filesystem::path fresh_dir(const std::string& tag);

/// Bundled scenario file for a case id ("MI", ...).
std::filesystem::path bundled_scenario(const std::string& case_id);

/// Bundled scenario text with a shorter horizon.
std::string scenario_text(const std::string& case_id, int horizon_years);

std::string read_file(const std::filesystem::path& p);

}  // namespace fcsim::testing
