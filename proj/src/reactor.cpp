#include "fcsim/reactor.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace fcsim {

double ReactorSpec::effective_power_MWe() const {
  return power_MWe * static_cast<double>(cycle_months) / static_cast<double>(period_months());
}

double ReactorSpec::burnup() const {
  return power_MWe * static_cast<double>(cycle_months) / batch_kg;
}

void ReactorSpec::validate(const SimClock& clock) const {
  auto fail = [&](const std::string& what) {
    throw ConfigError("reactor '" + name + "': " + what);
  };
  if (!(batch_kg > 0.0)) fail("batch_kg must be positive");
  if (batches_per_core < 1) fail("batches_per_core must be at least 1");
  if (cycle_months < 1) fail("cycle_months must be at least 1");
  if (outage_months < 0) fail("outage_months must be non-negative");
  if (!(power_MWe >= 0.0)) fail("power_MWe must be non-negative");
  if (lifetime_months < 1) fail("lifetime_months must be positive");
  for (auto [what, months] : std::array<std::pair<const char*, int>, 3>{
           {{"cycle_months", cycle_months},
            {"outage_months", outage_months},
            {"lifetime_months", lifetime_months}}}) {
    if (!clock.divides(months)) {
      fail(std::string(what) + " = " + std::to_string(months) + " is not a multiple of the " +
           std::to_string(clock.dt_months()) + "-month time step");
    }
  }
}

std::string_view to_string(ReactorPhase p) {
  switch (p) {
    case ReactorPhase::AwaitingFuel:
      return "awaiting-fuel";
    case ReactorPhase::Operating:
      return "operating";
    case ReactorPhase::Outage:
      return "outage";
    case ReactorPhase::Retired:
      return "retired";
  }
  return "unknown";
}

namespace {
constexpr std::array<std::pair<ReactorEventKind, std::string_view>, 7> kEventNames = {{
    {ReactorEventKind::Commission, "commission"},
    {ReactorEventKind::CycleStart, "cycle_start"},
    {ReactorEventKind::OutageStart, "outage_start"},
    {ReactorEventKind::ShortageWait, "shortage_wait"},
    {ReactorEventKind::BatchReceived, "batch_received"},
    {ReactorEventKind::Discharge, "discharge"},
    {ReactorEventKind::Retire, "retire"},
}};
}  // namespace

std::string_view to_string(ReactorEventKind k) {
  for (auto [kind, name] : kEventNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<ReactorEventKind> parse_reactor_event(std::string_view name) {
  for (auto [kind, n] : kEventNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

Reactor::Reactor(FacilityId id, ReactorSpec spec, const SimClock& clock, Step commission,
                 std::optional<Step> retire_at)
    : id_(id), spec_(std::move(spec)), commission_(commission) {
  spec_.validate(clock);
  cycle_steps_ = clock.steps_for(spec_.cycle_months);
  outage_steps_ = clock.steps_for(spec_.outage_months);
  retire_at_ = retire_at.value_or(commission + clock.steps_for(spec_.lifetime_months));
}

Reactor Reactor::preloaded(FacilityId id, ReactorSpec spec, const SimClock& clock, Step commission,
                           std::optional<Step> retire_at, std::vector<ReactorEvent>* events) {
  Reactor r(id, std::move(spec), clock, commission, retire_at);
  for (int i = 0; i < r.spec_.batches_per_core; ++i) {
    r.core_.push_back(Material::from_recipe(r.spec_.batch_kg, r.spec_.fresh));
  }
  r.phase_ = ReactorPhase::Operating;
  r.cycle_start_ = commission;
  if (events != nullptr) {
    events->push_back({commission, id, ReactorEventKind::Commission, r.spec_.power_MWe});
    events->push_back({commission, id, ReactorEventKind::BatchReceived,
                       static_cast<double>(r.spec_.batches_per_core)});
    events->push_back({commission, id, ReactorEventKind::CycleStart, 0.0});
  }
  return r;
}

double Reactor::core_mass() const {
  double m = 0.0;
  for (const auto& b : core_) m += b.mass();
  return m;
}

double Reactor::core_isotope_mass(Isotope iso) const {
  double m = 0.0;
  for (const auto& b : core_) m += b.isotope_mass(iso);
  return m;
}

int Reactor::lots_needed() const {
  if (retired()) return 0;
  return spec_.batches_per_core - batches_in_core();
}

std::optional<Request> Reactor::request(bool fuel_sharing) const {
  const int lots = lots_needed();
  if (lots <= 0) return std::nullopt;
  Request r;
  r.requester = id_;
  r.commodity = spec_.fuel_in;
  r.quantity = lots * spec_.batch_kg;
  r.divisible = false;
  r.lot_size = spec_.batch_kg;
  r.preference = fuel_sharing ? fuel_sharing_preference(1.0, lots) : 1.0;
  return r;
}

int Reactor::receive(const Material& fuel) {
  if (retired()) {
    throw ValueError("reactor " + spec_.name + " is retired");
  }
  const long lots = whole_lots(fuel.mass(), spec_.batch_kg);
  if (lots > lots_needed()) {
    throw ValueError("reactor " + spec_.name + " offered " + std::to_string(lots) +
                     " batches but needs " + std::to_string(lots_needed()));
  }
  Material rest = fuel;
  for (long i = 0; i < lots; ++i) {
    if (i + 1 == lots) {
      core_.push_back(rest);
    } else {
      auto [batch, remainder] = split(rest, spec_.batch_kg);
      core_.push_back(batch);
      rest = remainder;
    }
  }
  return static_cast<int>(lots);
}

void Reactor::start_cycle(Step t, TickResult& out) {
  phase_ = ReactorPhase::Operating;
  cycle_start_ = t;
  out.events.push_back({t, id_, ReactorEventKind::CycleStart, 0.0});
}

TickResult Reactor::tick(Step t) {
  TickResult out;
  operated_ = false;
  if (retired()) return out;
  if (t >= retire_at_) return retire(t);

  const bool full = lots_needed() == 0;
  switch (phase_) {
    case ReactorPhase::AwaitingFuel:
      if (full) start_cycle(t, out);
      break;
    case ReactorPhase::Outage:
      if (!outage_logged_ && t >= outage_start_) {
        out.events.push_back({outage_start_, id_, ReactorEventKind::OutageStart, 0.0});
        outage_logged_ = true;
      }
      if (t - outage_start_ >= outage_steps_) {
        if (full) {
          start_cycle(t, out);
        } else {
          phase_ = ReactorPhase::AwaitingFuel;
          out.events.push_back(
              {t, id_, ReactorEventKind::ShortageWait, static_cast<double>(lots_needed())});
        }
      }
      break;
    case ReactorPhase::Operating:
    case ReactorPhase::Retired:
      break;
  }

  operated_ = phase_ == ReactorPhase::Operating;
  if (phase_ == ReactorPhase::Operating && t - cycle_start_ + 1 >= cycle_steps_) {
    Material spent = Material::from_recipe(core_.front().mass(), spec_.spent);
    core_.pop_front();
    out.events.push_back({t, id_, ReactorEventKind::Discharge, spent.mass()});
    out.discharged.push_back(std::move(spent));
    phase_ = ReactorPhase::Outage;
    outage_start_ = t + 1;
    outage_logged_ = false;
  }
  return out;
}

TickResult Reactor::retire(Step t) {
  TickResult out;
  if (retired()) return out;
  double total = 0.0;
  for (const auto& batch : core_) {
    out.discharged.push_back(Material::from_recipe(batch.mass(), spec_.spent));
    total += batch.mass();
  }
  core_.clear();
  operated_ = false;
  if (total > 0.0) {
    out.events.push_back({t, id_, ReactorEventKind::Discharge, total});
  }
  out.events.push_back({t, id_, ReactorEventKind::Retire, 0.0});
  phase_ = ReactorPhase::Retired;
  return out;
}

}  // namespace fcsim
