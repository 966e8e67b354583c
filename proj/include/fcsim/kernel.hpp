#pragma once

#include <cstdint>
#include <filesystem>

#include "fcsim/metrics.hpp"
#include "fcsim/scenario.hpp"

namespace fcsim {

struct RunSummary {
  Step steps = 0;
  MetricsSummary metrics;
  double max_balance_residual_kg = 0.0;
  double wall_seconds = 0.0;
};

/// Equal-preference ordering key of a requester. Constant over a run.
std::uint64_t tie_key(TieBreak mode, std::uint64_t seed, FacilityId requester);

/// Runs a scenario to its horizon, writing every output table plus the
/// metrics tables into out_dir (created if missing).
///
/// Per step, in order: deployment (retire, then build); production
/// (separations and fabrication intake); exchange; reactor ticks; snapshot.
/// Material produced or received in step t can be offered from step t+1.
RunSummary run(const Scenario& scenario, const std::filesystem::path& out_dir);

}  // namespace fcsim
