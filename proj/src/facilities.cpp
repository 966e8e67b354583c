#include "fcsim/facilities.hpp"

#include <algorithm>
#include <cmath>

namespace fcsim {

Source::Source(FacilityId id, Commodity commodity, Recipe recipe, double cap_per_step)
    : id_(id), commodity_(commodity), recipe_(std::move(recipe)), cap_(cap_per_step) {
  if (!(cap_per_step >= 0.0)) throw ValueError("source capacity must be non-negative");
}

Material Source::emit(double kg) {
  if (kg < 0.0) throw ValueError("cannot emit a negative mass");
  if (kg > cap_ * (1.0 + kMassRelTol)) {
    throw InsufficientMassError("source asked for " + std::to_string(kg) + " kg beyond its cap");
  }
  emitted_ += kg;
  return Material::from_recipe(kg, recipe_);
}

// Storage ------------------------------------------------------------------

Storage::Storage(FacilityId id, Commodity in, Commodity out, int residence_steps)
    : id_(id), in_(in), out_(out), residence_(residence_steps) {
  if (residence_steps < 0) throw ValueError("residence time must be non-negative");
}

void Storage::accept(Material m, Step arrival) {
  if (m.empty()) return;
  if (!lots_.empty() && arrival < lots_.back().arrival) {
    throw ValueError("storage arrivals must be in time order");
  }
  lots_.push_back({arrival, std::move(m)});
}

double Storage::biddable(Step t) const {
  double kg = 0.0;
  for (const auto& lot : lots_) {
    if (t - lot.arrival < residence_) break;
    kg += lot.material.mass();
  }
  return kg;
}

Composition Storage::head_composition() const {
  return lots_.empty() ? Composition{} : lots_.front().material.composition();
}

Material Storage::withdraw(double kg, Step t) {
  Material out;
  double left = kg;
  while (left > 0.0 && !lots_.empty() && t - lots_.front().arrival >= residence_) {
    Lot& head = lots_.front();
    if (head.material.mass() <= left * (1.0 + kMassRelTol)) {
      left -= head.material.mass();
      out = mix(out, head.material);
      lots_.pop_front();
    } else {
      auto [taken, rest] = split(head.material, left);
      out = mix(out, taken);
      head.material = rest;
      left = 0.0;
    }
  }
  if (left > kMassRelTol * std::max(1.0, kg)) {
    throw InsufficientMassError("storage holds only " + std::to_string(kg - left) +
                                " kg eligible of " + std::to_string(kg) + " kg requested");
  }
  return out;
}

double Storage::inventory() const {
  double kg = 0.0;
  for (const auto& lot : lots_) kg += lot.material.mass();
  return kg;
}

double Storage::inventory(Isotope iso) const {
  double kg = 0.0;
  for (const auto& lot : lots_) kg += lot.material.isotope_mass(iso);
  return kg;
}

// Separations --------------------------------------------------------------

StreamMap default_stream_map() {
  StreamMap m{};
  m[index(Isotope::U235)] = Stream::Uranium;
  m[index(Isotope::U238)] = Stream::Uranium;
  m[index(Isotope::Pu239)] = Stream::Fissile;
  m[index(Isotope::Am241)] = Stream::Fissile;
  m[index(Isotope::FissionProducts)] = Stream::Waste;
  m[index(Isotope::Other)] = Stream::Waste;
  return m;
}

Separations::Separations(FacilityId id, SeparationsSpec spec, const SimClock& clock)
    : id_(id), spec_(std::move(spec)), dt_months_(clock.dt_months()) {
  for (std::size_t i = 1; i < spec_.schedule.size(); ++i) {
    if (spec_.schedule[i].start_month <= spec_.schedule[i - 1].start_month) {
      throw ConfigError("separations '" + spec_.name + "': schedule must be increasing");
    }
  }
}

double Separations::cap_per_step(Step t) const {
  const int month = t * dt_months_;
  double annual = 0.0;
  for (const auto& p : spec_.schedule) {
    if (p.start_month <= month) annual = p.annual_kg;
  }
  return annual * dt_months_ / 12.0;
}

void Separations::accept(const Material& m) { input_ = mix(input_, m); }

SeparatedStreams Separations::separations_tick(Step t) {
  SeparatedStreams out;
  const double take = std::min(input_.mass(), cap_per_step(t));
  if (!(take > 0.0)) return out;
  auto [batch, rest] = split(input_, take);
  input_ = rest;
  Material::Masses fissile{}, uranium{}, waste{};
  for (auto iso : kAllIsotopes) {
    const double m = batch.isotope_mass(iso);
    switch (spec_.streams[index(iso)]) {
      case Stream::Fissile:
        fissile[index(iso)] = m;
        break;
      case Stream::Uranium:
        uranium[index(iso)] = m;
        break;
      case Stream::Waste:
        waste[index(iso)] = m;
        break;
    }
  }
  out.fissile = Material::from_masses(fissile);
  out.uranium = Material::from_masses(uranium);
  out.waste = Material::from_masses(waste);
  return out;
}

std::optional<Request> Separations::request(Step t) const {
  const double room = cap_per_step(t) - input_.mass();
  if (!(room > 0.0)) return std::nullopt;
  Request r;
  r.requester = id_;
  r.commodity = spec_.input;
  r.quantity = room;
  r.divisible = true;
  r.lot_size = std::isinf(room) ? 1.0 : room;
  return r;
}

// Sink ---------------------------------------------------------------------

void Sink::accept(const Material& m) {
  for (auto iso : kAllIsotopes) masses_[index(iso)] += m.isotope_mass(iso);
}

double Sink::inventory() const {
  long double kg = 0.0L;
  for (auto x : masses_) kg += x;
  return static_cast<double>(kg);
}

double Sink::inventory(Isotope iso) const { return static_cast<double>(masses_[index(iso)]); }

// Fabrication --------------------------------------------------------------

Fabrication::Fabrication(FacilityId id, Recipe target, StreamMap streams)
    : id_(id), target_(std::move(target)), streams_(streams) {
  for (auto iso : kAllIsotopes) {
    if (streams_[index(iso)] == Stream::Fissile) fissile_fraction_ += target_.fraction(iso);
  }
  if (!(fissile_fraction_ > 0.0)) {
    throw ConfigError("fabrication target '" + target_.name + "' has no fissile-stream content");
  }
}

void Fabrication::settle(Step t) {
  if (incoming_step_ >= 0 && incoming_step_ < t) {
    settled_ = mix(settled_, incoming_);
    incoming_ = Material{};
    incoming_step_ = -1;
  }
}

void Fabrication::accept_fissile(const Material& m, Step arrival) {
  if (m.empty()) return;
  settle(arrival);
  incoming_ = mix(incoming_, m);
  incoming_step_ = arrival;
}

double Fabrication::biddable_fissile(Step t) const {
  double kg = settled_.mass();
  if (incoming_step_ >= 0 && incoming_step_ < t) kg += incoming_.mass();
  return kg;
}

double Fabrication::available_output(Step t) const {
  return biddable_fissile(t) / fissile_fraction_;
}

Composition Fabrication::output_composition(Step t, const Recipe& du) const {
  Material stock = settled_;
  if (incoming_step_ >= 0 && incoming_step_ < t) stock = mix(stock, incoming_);
  if (stock.empty()) return target_.fractions;
  const Composition fissile = stock.composition();
  Composition c{};
  for (std::size_t i = 0; i < kIsotopeCount; ++i) {
    c[i] = fissile_fraction_ * fissile[i] + (1.0 - fissile_fraction_) * du.fractions[i];
  }
  return c;
}

Fabrication::Result Fabrication::fabricate(double demand_kg, Step t, Source& du) {
  if (demand_kg < 0.0) throw ValueError("negative fabrication demand");
  settle(t);
  Result r;
  const double out_kg = std::min(demand_kg, available_output(t));
  if (!(out_kg > 0.0)) return r;
  const double fissile_kg = std::min(settled_.mass(), out_kg * fissile_fraction_);
  auto [used, rest] = split(settled_, fissile_kg);
  settled_ = rest;
  r.fissile_used = used;
  r.du_kg = out_kg - fissile_kg;
  r.output = mix(used, du.emit(r.du_kg));
  return r;
}

}  // namespace fcsim
