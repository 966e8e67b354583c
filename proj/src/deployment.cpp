#include "fcsim/deployment.hpp"

#include <cmath>

namespace fcsim {

void DeploymentPlan::validate(const SimClock& clock) const {
  if (!(base_capacity_MWe > 0.0)) throw ConfigError("deployment: base capacity must be positive");
  if (build_period_months < 1) throw ConfigError("deployment: build period must be positive");
  if (initial_units < 0) throw ConfigError("deployment: initial units must be non-negative");
  if (!(lwr_unit_effective_MWe > 0.0) || !(sfr_unit_effective_MWe > 0.0)) {
    throw ConfigError("deployment: unit effective power must be positive");
  }
  if (!clock.divides(build_period_months)) {
    throw ConfigError("deployment: build period " + std::to_string(build_period_months) +
                      " months is not a multiple of the time step");
  }
  if (!clock.divides(initial_retire_start_month) || !clock.divides(sfr_available_month)) {
    throw ConfigError("deployment: schedule months must be multiples of the time step");
  }
}

double target_capacity(const DeploymentPlan& plan, int month) {
  return plan.base_capacity_MWe * std::pow(1.0 + plan.annual_growth, month / 12.0);
}

bool is_build_step(const DeploymentPlan& plan, const SimClock& clock, Step t) {
  return clock.month(t) % plan.build_period_months == 0;
}

BuildOrder plan(const DeploymentPlan& p, const SimClock& clock, Step t,
                double installed_effective_MWe) {
  const int month = clock.month(t);
  BuildOrder order;
  order.kind = month >= p.sfr_available_month ? ReactorKind::Sfr : ReactorKind::Lwr;
  const double unit = order.kind == ReactorKind::Sfr ? p.sfr_unit_effective_MWe
                                                     : p.lwr_unit_effective_MWe;
  const double deficit = target_capacity(p, month) - installed_effective_MWe;
  if (deficit > 0.0) {
    order.units = static_cast<int>(std::ceil(deficit / unit - 1e-9));
  }
  return order;
}

int initial_retirement_month(const DeploymentPlan& p, int dt_months, int k) {
  // round(x) for x = (k-1) * span / (units * dt), in integer arithmetic
  const long num = static_cast<long>(k - 1) * p.initial_retire_span_months;
  const long den = static_cast<long>(p.initial_units) * dt_months;
  const long slots = (2 * num + den) / (2 * den);
  return p.initial_retire_start_month + static_cast<int>(slots) * dt_months;
}

int initial_retirements(const DeploymentPlan& p, const SimClock& clock, Step t) {
  const int month = clock.month(t);
  int n = 0;
  for (int k = 1; k <= p.initial_units; ++k) {
    if (initial_retirement_month(p, clock.dt_months(), k) == month) ++n;
  }
  return n;
}

}  // namespace fcsim
