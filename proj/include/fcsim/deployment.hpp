#pragma once

#include <vector>

#include "fcsim/core.hpp"

namespace fcsim {

enum class ReactorKind { InitialLwr, Lwr, Sfr };

/// Growth-curve deployment: capacity follows base * (1 + growth)^(years),
/// new capacity is ordered every build period in whole units of whichever
/// technology is available, and the initial fleet retires on a uniform
/// stagger.
struct DeploymentPlan {
  double base_capacity_MWe = 90'000.0;
  double annual_growth = 0.01;
  int build_period_months = 21;
  /// LWRs are built before this month, SFRs from it onward.
  int sfr_available_month = 420;
  int initial_units = 100;
  int initial_retire_start_month = 180;
  int initial_retire_span_months = 480;
  double lwr_unit_effective_MWe = 900.0;
  double sfr_unit_effective_MWe = 360.0;
  double initial_unit_effective_MWe = 900.0;

  void validate(const SimClock& clock) const;
};

double target_capacity(const DeploymentPlan& plan, int month);

struct BuildOrder {
  ReactorKind kind = ReactorKind::Lwr;
  int units = 0;
};

bool is_build_step(const DeploymentPlan& plan, const SimClock& clock, Step t);

/// Units to order at build boundary t so installed effective capacity
/// reaches the target. Installed capacity counts every unit not yet retired,
/// including units idle for lack of fuel.
BuildOrder plan(const DeploymentPlan& plan, const SimClock& clock, Step t,
                double installed_effective_MWe);

/// Month at which initial unit k (1-based) retires:
/// start + round((k-1) * span / units / dt) * dt.
int initial_retirement_month(const DeploymentPlan& plan, int dt_months, int k);

/// Number of initial units retiring at step t.
int initial_retirements(const DeploymentPlan& plan, const SimClock& clock, Step t);

}  // namespace fcsim
