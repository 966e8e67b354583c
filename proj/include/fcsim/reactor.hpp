#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcsim/core.hpp"
#include "fcsim/exchange.hpp"

namespace fcsim {

/// Static reactor parameters. Durations are in months; they are converted to
/// steps against the simulation clock when a reactor or fleet is created.
struct ReactorSpec {
  std::string name;
  Commodity fuel_in = Commodity::FreshLwrFuel;
  Commodity fuel_out = Commodity::SpentLwrFuel;
  double batch_kg = 0.0;
  int batches_per_core = 1;
  int cycle_months = 1;    // operating period, outage excluded
  int outage_months = 0;   // refueling outage
  double power_MWe = 0.0;  // nameplate capacity while operating
  int lifetime_months = 960;
  Recipe fresh;
  Recipe spent;

  double core_kg() const { return batch_kg * batches_per_core; }
  int period_months() const { return cycle_months + outage_months; }
  /// Capacity-factor-weighted power: power_MWe * cycle / (cycle + outage).
  double effective_power_MWe() const;
  /// MWe-months per kg discharged at steady state.
  double burnup() const;
  /// Throws ConfigError if the durations do not fit the clock or the
  /// quantities are non-physical.
  void validate(const SimClock& clock) const;
};

enum class ReactorPhase { AwaitingFuel, Operating, Outage, Retired };

std::string_view to_string(ReactorPhase p);

enum class ReactorEventKind {
  Commission,
  CycleStart,
  OutageStart,
  ShortageWait,
  BatchReceived,
  Discharge,
  Retire,
};

std::string_view to_string(ReactorEventKind k);
std::optional<ReactorEventKind> parse_reactor_event(std::string_view name);

struct ReactorEvent {
  Step t = 0;
  FacilityId reactor;
  ReactorEventKind kind = ReactorEventKind::Commission;
  double value = 0.0;
};

struct TickResult {
  std::vector<Material> discharged;
  std::vector<ReactorEvent> events;
};

/// One discrete reactor. The kernel calls request() and receive() during the
/// exchange of step t, then tick(t) to advance the state machine for step t.
///
/// A cycle starting at step s operates s .. s+cycle-1. The oldest batch is
/// discharged at the end of step s+cycle-1 and the outage occupies the next
/// outage_steps steps; the next cycle starts on the first step with a full
/// core once the outage is over. A reactor never runs on a partial core.
class Reactor {
 public:
  Reactor(FacilityId id, ReactorSpec spec, const SimClock& clock, Step commission,
          std::optional<Step> retire_at = std::nullopt);

  /// A reactor that starts at `commission` with a full core of fresh fuel and
  /// operates from that step. Returns the events of the initial load.
  static Reactor preloaded(FacilityId id, ReactorSpec spec, const SimClock& clock,
                           Step commission, std::optional<Step> retire_at,
                           std::vector<ReactorEvent>* events = nullptr);

  FacilityId id() const { return id_; }
  const ReactorSpec& spec() const { return spec_; }
  ReactorPhase phase() const { return phase_; }
  bool operating() const { return phase_ == ReactorPhase::Operating; }
  bool retired() const { return phase_ == ReactorPhase::Retired; }
  Step commission_step() const { return commission_; }
  Step retire_step() const { return retire_at_; }
  int cycle_steps() const { return cycle_steps_; }
  int outage_steps() const { return outage_steps_; }

  int batches_in_core() const { return static_cast<int>(core_.size()); }
  double core_mass() const;
  double core_isotope_mass(Isotope iso) const;
  /// Batches missing from a full core; 0 once retired.
  int lots_needed() const;

  /// The just-in-time fresh fuel request for this step, if any: all missing
  /// batches as one lot-granular request.
  std::optional<Request> request(bool fuel_sharing) const;

  /// Loads whole batches into the core. Returns the number of batches.
  int receive(const Material& fuel);

  TickResult tick(Step t);

  /// Discharges whatever is in the core and retires the reactor.
  TickResult retire(Step t);

  /// True when the reactor ran during the last ticked step, including the
  /// final step of a cycle that ends with a discharge.
  bool operated() const { return operated_; }
  double generated_power_MWe() const { return operated_ ? spec_.power_MWe : 0.0; }

 private:
  void start_cycle(Step t, TickResult& out);

  FacilityId id_;
  ReactorSpec spec_;
  int cycle_steps_;
  int outage_steps_;
  Step commission_;
  Step retire_at_;
  ReactorPhase phase_ = ReactorPhase::AwaitingFuel;
  std::deque<Material> core_;  // oldest batch first
  Step cycle_start_ = 0;
  Step outage_start_ = 0;
  bool outage_logged_ = false;
  bool operated_ = false;
};

}  // namespace fcsim
