#pragma once

#include <array>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fcsim/core.hpp"
#include "fcsim/exchange.hpp"

namespace fcsim {

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

/// Emits its recipe on demand, up to a per-step capacity (unlimited by default).
class Source {
 public:
  Source(FacilityId id, Commodity commodity, Recipe recipe, double cap_per_step = kUnlimited);

  FacilityId id() const { return id_; }
  Commodity commodity() const { return commodity_; }
  const Recipe& recipe() const { return recipe_; }
  double cap_per_step() const { return cap_; }
  double total_emitted() const { return emitted_; }

  Material emit(double kg);

 private:
  FacilityId id_;
  Commodity commodity_;
  Recipe recipe_;
  double cap_;
  double emitted_ = 0.0;
};

/// Holds material for a minimum residence time, then releases it FIFO.
class Storage {
 public:
  Storage(FacilityId id, Commodity in, Commodity out, int residence_steps);

  FacilityId id() const { return id_; }
  Commodity commodity_in() const { return in_; }
  Commodity commodity_out() const { return out_; }
  int residence_steps() const { return residence_; }

  void accept(Material m, Step arrival);
  /// Mass that has completed its residence by step t.
  double storage_tick(Step t) const { return biddable(t); }
  double biddable(Step t) const;
  /// Composition of the next material to leave.
  Composition head_composition() const;
  /// Removes kg of eligible material, oldest first.
  Material withdraw(double kg, Step t);

  double inventory() const;
  double inventory(Isotope iso) const;

 private:
  struct Lot {
    Step arrival;
    Material material;
  };
  FacilityId id_;
  Commodity in_;
  Commodity out_;
  int residence_;
  std::deque<Lot> lots_;
};

enum class Stream { Fissile, Uranium, Waste };

/// Which output stream each isotope is routed to.
using StreamMap = std::array<Stream, kIsotopeCount>;

/// Pu239 and Am241 to the fissile stream, uranium to the U stream, the rest
/// to waste.
StreamMap default_stream_map();

/// Annual throughput in effect from start_month onward.
struct CapacityPeriod {
  int start_month = 0;
  double annual_kg = 0.0;
};

struct SeparationsSpec {
  std::string name;
  Commodity input = Commodity::SpentLwrFuel;
  /// Ordered by start_month. Before the first period the capacity is zero;
  /// an infinite annual_kg means unlimited.
  std::vector<CapacityPeriod> schedule;
  StreamMap streams = default_stream_map();
};

struct SeparatedStreams {
  Material fissile;
  Material uranium;
  Material waste;
  double processed() const { return fissile.mass() + uranium.mass() + waste.mass(); }
};

/// Partitions spent fuel into fissile, uranium and waste streams at a capped
/// throughput. Input received in an exchange is processed from the next step.
class Separations {
 public:
  Separations(FacilityId id, SeparationsSpec spec, const SimClock& clock);

  FacilityId id() const { return id_; }
  const SeparationsSpec& spec() const { return spec_; }

  /// Throughput cap for step t: annual capacity * dt / 12.
  double cap_per_step(Step t) const;
  void accept(const Material& m);
  /// Processes min(buffered input, cap) and returns the streams.
  SeparatedStreams separations_tick(Step t);

  /// Divisible request for the room left under this step's cap.
  std::optional<Request> request(Step t) const;

  double buffered() const { return input_.mass(); }
  const Material& buffer() const { return input_; }

 private:
  FacilityId id_;
  SeparationsSpec spec_;
  int dt_months_;
  Material input_;
};

/// Accumulates material that never leaves (separated uranium, waste).
class Sink {
 public:
  explicit Sink(FacilityId id) : id_(id) {}
  FacilityId id() const { return id_; }
  void accept(const Material& m);
  double inventory() const;
  double inventory(Isotope iso) const;

 private:
  FacilityId id_;
  // Long double accumulators: these grow to ~1e9 kg over a run.
  std::array<long double, kIsotopeCount> masses_{};
};

/// Blends separated fissile material with depleted uranium into a target
/// recipe. The fissile-stream isotopes of the target fix the fraction f of
/// each output kg drawn from fissile inventory; the rest is DU.
class Fabrication {
 public:
  Fabrication(FacilityId id, Recipe target, StreamMap streams);

  FacilityId id() const { return id_; }
  const Recipe& target() const { return target_; }
  double fissile_fraction() const { return fissile_fraction_; }

  /// Material arriving at step t becomes usable at step t+1.
  void accept_fissile(const Material& m, Step arrival);
  double biddable_fissile(Step t) const;
  /// Output mass that biddable inventory supports at step t.
  double available_output(Step t) const;

  struct Result {
    Material output;
    Material fissile_used;
    double du_kg = 0.0;
  };

  /// Produces min(demand, available_output(t)) kg. `du` supplies the
  /// depleted-uranium share.
  Result fabricate(double demand_kg, Step t, Source& du);

  double inventory() const { return settled_.mass() + incoming_.mass(); }
  double inventory(Isotope iso) const {
    return settled_.isotope_mass(iso) + incoming_.isotope_mass(iso);
  }
  /// Composition of one kg of output if fabricated now from biddable stock.
  Composition output_composition(Step t, const Recipe& du) const;

 private:
  void settle(Step t);

  FacilityId id_;
  Recipe target_;
  StreamMap streams_;
  double fissile_fraction_ = 0.0;
  Material settled_;
  Material incoming_;
  Step incoming_step_ = -1;
};

}  // namespace fcsim
