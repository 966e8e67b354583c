#include "fcsim/fleet.hpp"

#include <algorithm>

namespace fcsim {

ReactorFleet::ReactorFleet(FacilityId id, ReactorSpec spec, const SimClock& clock)
    : id_(id), spec_(std::move(spec)) {
  spec_.validate(clock);
  period_steps_ = clock.steps_for(spec_.period_months());
}

double ReactorFleet::n_operating() const {
  const double cap = core_capacity();
  if (units_ == 0 || cap <= 0.0) return 0.0;
  return units_ * (inventory_ / cap);
}

double ReactorFleet::discharge_rate() const {
  return spec_.batch_kg / period_steps_ * n_operating();
}

Material ReactorFleet::discharge() {
  const double d = std::min(discharge_rate(), inventory_);
  inventory_ -= d;
  if (inventory_ < 0.0) inventory_ = 0.0;
  return Material::from_recipe(d, spec_.spent);
}

double ReactorFleet::refuel(const Material& offered) {
  const double space = std::max(0.0, core_capacity() - inventory_);
  const double accepted = std::min(offered.mass(), space);
  inventory_ += accepted;
  return accepted;
}

std::optional<Request> ReactorFleet::request() const {
  const double space = core_capacity() - inventory_;
  if (space <= kMassRelTol * std::max(1.0, core_capacity())) return std::nullopt;
  Request r;
  r.requester = id_;
  r.commodity = spec_.fuel_in;
  r.quantity = space;
  r.divisible = true;
  r.lot_size = space;
  r.preference = 1.0;
  return r;
}

void ReactorFleet::build(int units) {
  if (units < 0) throw ValueError("cannot build a negative number of units");
  units_ += units;
}

ReactorFleet::Retirement ReactorFleet::retire(int units) {
  if (units < 0) throw ValueError("cannot retire a negative number of units");
  if (units > units_) {
    throw ValueError("cannot retire " + std::to_string(units) + " of " + std::to_string(units_) +
                     " units");
  }
  Retirement out;
  const double full_cores = units * spec_.core_kg();
  out.overdraw_kg = std::max(0.0, full_cores - inventory_);
  inventory_ = std::max(0.0, inventory_ - full_cores);
  units_ -= units;
  double discharged = full_cores;
  if (units_ == 0) {
    // Rounding dust left in an emptied fleet leaves with the last cores.
    discharged += inventory_;
    inventory_ = 0.0;
  }
  out.discharged = Material::from_recipe(discharged, spec_.spent);
  return out;
}

void ReactorFleet::schedule_retirement(Step t, int units) {
  if (units < 0) throw ValueError("cannot schedule a negative retirement");
  retirement_queue_[t] += units;
}

int ReactorFleet::retirements_due(Step t) const {
  auto it = retirement_queue_.find(t);
  return it == retirement_queue_.end() ? 0 : it->second;
}

}  // namespace fcsim
