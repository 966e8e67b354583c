#pragma once

#include <map>
#include <optional>

#include "fcsim/core.hpp"
#include "fcsim/exchange.hpp"
#include "fcsim/reactor.hpp"

namespace fcsim {

/// Continuous-flow aggregate of identical reactor units.
///
/// With N units, core inventory C_inv and total capacity C_cap = N * core:
///   operating units   N_o = N * C_inv / C_cap        (0 for an empty fleet)
///   discharge / step  D   = (B / L) * N_o            (L = cycle + outage, in steps)
///   generated power   P_G = P_r * N_o
/// Fuel is shared perfectly across units and cycles are perfectly staggered.
class ReactorFleet {
 public:
  ReactorFleet(FacilityId id, ReactorSpec spec, const SimClock& clock);

  FacilityId id() const { return id_; }
  const ReactorSpec& spec() const { return spec_; }
  int units() const { return units_; }
  double core_inventory() const { return inventory_; }
  double core_capacity() const { return units_ * spec_.core_kg(); }
  int period_steps() const { return period_steps_; }

  double n_operating() const;
  double generated_power_MWe() const { return spec_.power_MWe * n_operating(); }
  /// Discharge per step for the current inventory, before clamping.
  double discharge_rate() const;

  /// Removes this step's discharge from the cores as spent fuel.
  Material discharge();

  /// Loads fresh fuel up to the empty core space; returns the accepted mass.
  double refuel(const Material& offered);

  /// Divisible request for all empty core space, if any.
  std::optional<Request> request() const;

  void build(int units);

  struct Retirement {
    Material discharged;
    /// Mass discharged beyond what the cores actually held (the full-core
    /// rule applied to an underfilled fleet).
    double overdraw_kg = 0.0;
  };

  /// Retires units, discharging a full core for each one regardless of the
  /// fleet-average fill. The core inventory is clamped at zero.
  Retirement retire(int units);

  void schedule_retirement(Step t, int units);
  /// Units scheduled to retire at step t.
  int retirements_due(Step t) const;

 private:
  FacilityId id_;
  ReactorSpec spec_;
  int period_steps_;
  int units_ = 0;
  double inventory_ = 0.0;
  std::map<Step, int> retirement_queue_;
};

}  // namespace fcsim
