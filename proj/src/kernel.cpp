#include "fcsim/kernel.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <tuple>

#include <fmt/format.h>

#include "fcsim/csv.hpp"
#include "fcsim/deployment.hpp"
#include "fcsim/exchange.hpp"
#include "fcsim/facilities.hpp"
#include "fcsim/fleet.hpp"
#include "fcsim/reactor.hpp"

namespace fcsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t tie_key(TieBreak mode, std::uint64_t seed, FacilityId requester) {
  if (mode == TieBreak::RequesterId) return 0;
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(requester.value) *
                                        0xD6E8FEB86659FD93ULL));
}

namespace {

// Fixed facility ids; individual reactors are numbered from kFirstReactor.
constexpr FacilityId kLwrSource{0};
constexpr FacilityId kDuSource{1};
constexpr FacilityId kLwrStorage{2};
constexpr FacilityId kSfrStorage{3};
constexpr FacilityId kLwrSeparations{4};
constexpr FacilityId kSfrSeparations{5};
constexpr FacilityId kFabrication{6};
constexpr FacilityId kSeparatedU{7};
constexpr FacilityId kWaste{8};
constexpr FacilityId kLwrFleet{9};
constexpr FacilityId kSfrFleet{10};
constexpr std::uint32_t kFirstReactor = 100;

// Nodes of the flow and inventory tables. Reactors are grouped by type.
enum class Node {
  LwrSource,
  DuSource,
  LwrReactors,
  SfrReactors,
  LwrStorage,
  SfrStorage,
  LwrSeparations,
  SfrSeparations,
  Fabrication,
  SeparatedU,
  Waste,
};

std::string_view node_name(Node n) {
  switch (n) {
    case Node::LwrSource:
      return "lwr_source";
    case Node::DuSource:
      return "du_source";
    case Node::LwrReactors:
      return "lwr_reactors";
    case Node::SfrReactors:
      return "sfr_reactors";
    case Node::LwrStorage:
      return "lwr_storage";
    case Node::SfrStorage:
      return "sfr_storage";
    case Node::LwrSeparations:
      return "lwr_separations";
    case Node::SfrSeparations:
      return "sfr_separations";
    case Node::Fabrication:
      return "fabrication";
    case Node::SeparatedU:
      return "separated_u";
    case Node::Waste:
      return "waste";
  }
  return "?";
}

std::string_view prototype_name(ReactorKind k) {
  switch (k) {
    case ReactorKind::InitialLwr:
      return "lwr_init";
    case ReactorKind::Lwr:
      return "lwr";
    case ReactorKind::Sfr:
      return "sfr";
  }
  return "?";
}

constexpr std::array<ReactorKind, 3> kKinds = {ReactorKind::InitialLwr, ReactorKind::Lwr,
                                               ReactorKind::Sfr};

class Simulation {
 public:
  Simulation(const Scenario& s, const std::filesystem::path& dir)
      : s_(s),
        clock_(s.clock()),
        lwr_source_(kLwrSource, Commodity::FreshLwrFuel, s.recipe(s.facilities.lwr_fresh_recipe)),
        du_source_(kDuSource, Commodity::DepletedUranium, s.recipe(s.facilities.du_recipe)),
        lwr_storage_(kLwrStorage, s.lwr.fuel_out, s.lwr.fuel_out,
                     clock_.steps_for(s.facilities.storage_residence_months)),
        sfr_storage_(kSfrStorage, s.sfr.fuel_out, s.sfr.fuel_out,
                     clock_.steps_for(s.facilities.storage_residence_months)),
        lwr_sep_(kLwrSeparations, s.facilities.lwr_separations, clock_),
        sfr_sep_(kSfrSeparations, s.facilities.sfr_separations, clock_),
        fab_(kFabrication, s.recipe(s.facilities.fabrication_target_recipe),
             s.facilities.lwr_separations.streams),
        sep_u_(kSeparatedU),
        waste_(kWaste),
        power_(dir / "power.csv",
               {"t", "month", "installed_MWe", "installed_effective_MWe", "generated_MWe",
                "target_MWe"}),
        flows_(dir / "flows.csv", {"t", "month", "from", "to", "commodity", "kg", "pu239_kg"}),
        inventories_(dir / "inventories.csv",
                     {"t", "month", "facility", "commodity", "kg", "pu239_kg"}),
        events_(dir / "reactor_events.csv", {"t", "month", "reactor", "event", "value"}),
        deployment_(dir / "deployment.csv",
                    {"t", "month", "prototype", "built", "retired", "installed_MWe"}),
        fleet_events_(dir / "fleet_events.csv",
                      {"t", "month", "fleet", "event", "units", "kg", "core_inventory_before_kg",
                       "overdraw_kg"}),
        balance_(dir / "balance.csv",
                 {"t", "month", "injected_kg", "overdraw_kg", "inventory_kg", "residual_kg"}),
        dir_(dir) {
    if (fleet()) {
      lwr_fleet_.emplace(kLwrFleet, s.lwr, clock_);
      sfr_fleet_.emplace(kSfrFleet, s.sfr, clock_);
    }
  }

  bool fleet() const { return s_.paradigm == Paradigm::Fleet; }

  double run() {
    initial_fleet();
    for (Step t = 0; t < clock_.horizon(); ++t) step(t);
    finish();
    return max_residual_;
  }

 private:
  struct FlowSum {
    double kg = 0.0;
    double pu = 0.0;
  };

  void flow(Node from, Node to, Commodity c, const Material& m) {
    if (m.empty()) return;
    auto& f = step_flows_[{from, to, c}];
    f.kg += m.mass();
    f.pu += m.isotope_mass(Isotope::Pu239);
  }

  Material inject(Source& src, double kg) {
    Material m = src.emit(kg);
    injected_ += m.mass();
    return m;
  }

  void log(const ReactorEvent& e) {
    events_.field(e.t).field(clock_.month(e.t)).field(names_[e.reactor.value - kFirstReactor]);
    events_.field(to_string(e.kind)).field(e.value);
    events_.end_row();
  }

  Node reactor_node(const ReactorSpec& spec) const {
    return spec.fuel_in == Commodity::FreshSfrFuel ? Node::SfrReactors : Node::LwrReactors;
  }

  void to_storage(const ReactorSpec& spec, const Material& m, Step t) {
    if (m.empty()) return;
    if (spec.fuel_out == Commodity::SpentSfrFuel) {
      sfr_storage_.accept(m, t);
      flow(reactor_node(spec), Node::SfrStorage, spec.fuel_out, m);
    } else {
      lwr_storage_.accept(m, t);
      flow(reactor_node(spec), Node::LwrStorage, spec.fuel_out, m);
    }
  }

  const ReactorSpec& spec_of(ReactorKind k) const {
    switch (k) {
      case ReactorKind::InitialLwr:
        return s_.initial_lwr;
      case ReactorKind::Lwr:
        return s_.lwr;
      case ReactorKind::Sfr:
        return s_.sfr;
    }
    return s_.lwr;
  }

  double unit_effective(ReactorKind k) const {
    switch (k) {
      case ReactorKind::InitialLwr:
        return s_.deployment.initial_unit_effective_MWe;
      case ReactorKind::Lwr:
        return s_.deployment.lwr_unit_effective_MWe;
      case ReactorKind::Sfr:
        return s_.deployment.sfr_unit_effective_MWe;
    }
    return 0.0;
  }

  double installed_effective() const {
    double p = 0.0;
    for (auto k : kKinds) p += alive_[static_cast<int>(k)] * unit_effective(k);
    return p;
  }

  double installed_nameplate() const {
    if (fleet()) {
      return lwr_fleet_->units() * s_.lwr.power_MWe + sfr_fleet_->units() * s_.sfr.power_MWe;
    }
    double p = 0.0;
    for (auto k : kKinds) p += alive_[static_cast<int>(k)] * spec_of(k).power_MWe;
    return p;
  }

  void deployment_row(Step t, ReactorKind k, int built, int retired) {
    deployment_.field(t).field(clock_.month(t)).field(prototype_name(k)).field(built).field(retired);
    deployment_.field(installed_effective());
    deployment_.end_row();
  }

  void fleet_row(Step t, const ReactorFleet& f, std::string_view event, int units, double kg,
                 double before, double overdraw) {
    fleet_events_.field(t).field(clock_.month(t));
    fleet_events_.field(f.id() == kLwrFleet ? "lwr_fleet" : "sfr_fleet");
    fleet_events_.field(event).field(units).field(kg).field(before).field(overdraw);
    fleet_events_.end_row();
  }

  // Initial fleet: full cores of fresh fuel, operating from step 0.
  void initial_fleet() {
    const int n = s_.deployment.initial_units;
    alive_[static_cast<int>(ReactorKind::InitialLwr)] = n;
    if (n == 0) return;
    if (fleet()) {
      lwr_fleet_->build(n);
      Material load = inject(lwr_source_, lwr_fleet_->core_capacity());
      flow(Node::LwrSource, Node::LwrReactors, Commodity::FreshLwrFuel, load);
      lwr_fleet_->refuel(load);
      fleet_row(0, *lwr_fleet_, "build", n, 0.0, 0.0, 0.0);
    } else {
      for (int k = 1; k <= n; ++k) {
        const Step retire =
            clock_.steps_for(initial_retirement_month(s_.deployment, clock_.dt_months(), k));
        const FacilityId id{kFirstReactor + static_cast<std::uint32_t>(reactors_.size())};
        names_.push_back(fmt::format("lwr_init_{:04d}", k));
        kinds_.push_back(ReactorKind::InitialLwr);
        std::vector<ReactorEvent> evs;
        reactors_.push_back(Reactor::preloaded(id, s_.initial_lwr, clock_, 0, retire, &evs));
        active_.push_back(reactors_.size() - 1);
        Material load = inject(lwr_source_, reactors_.back().core_mass());
        flow(Node::LwrSource, Node::LwrReactors, Commodity::FreshLwrFuel, load);
        for (const auto& e : evs) log(e);
      }
    }
    deployment_row(0, ReactorKind::InitialLwr, n, 0);
  }

  void deploy(Step t) {
    std::array<int, 3> retired{};
    if (fleet()) {
      const int init = initial_retirements(s_.deployment, clock_, t);
      retired[static_cast<int>(ReactorKind::InitialLwr)] = init;
      retired[static_cast<int>(ReactorKind::Lwr)] = lwr_fleet_->retirements_due(t);
      retired[static_cast<int>(ReactorKind::Sfr)] = sfr_fleet_->retirements_due(t);
      for (ReactorFleet* f : {&*lwr_fleet_, &*sfr_fleet_}) {
        const int units = f == &*lwr_fleet_ ? init + retired[static_cast<int>(ReactorKind::Lwr)]
                                            : retired[static_cast<int>(ReactorKind::Sfr)];
        if (units == 0) continue;
        const double before = f->core_inventory();
        auto r = f->retire(units);
        overdraw_ += r.overdraw_kg;
        to_storage(f->spec(), r.discharged, t);
        fleet_row(t, *f, "retire", units, r.discharged.mass(), before, r.overdraw_kg);
      }
    } else {
      auto keep = active_.begin();
      for (std::size_t i : active_) {
        Reactor& r = reactors_[i];
        if (r.retire_step() <= t) {
          auto out = r.retire(t);
          for (const auto& m : out.discharged) to_storage(r.spec(), m, t);
          for (const auto& e : out.events) log(e);
          ++retired[static_cast<int>(kinds_[i])];
        } else {
          *keep++ = i;
        }
      }
      active_.erase(keep, active_.end());
    }
    for (auto k : kKinds) {
      alive_[static_cast<int>(k)] -= retired[static_cast<int>(k)];
      if (retired[static_cast<int>(k)] > 0) deployment_row(t, k, 0, retired[static_cast<int>(k)]);
    }

    if (!is_build_step(s_.deployment, clock_, t)) return;
    const BuildOrder order = plan(s_.deployment, clock_, t, installed_effective());
    if (order.units <= 0) return;
    const ReactorSpec& spec = spec_of(order.kind);
    if (fleet()) {
      ReactorFleet& f = order.kind == ReactorKind::Sfr ? *sfr_fleet_ : *lwr_fleet_;
      const double before = f.core_inventory();
      f.build(order.units);
      f.schedule_retirement(t + clock_.steps_for(spec.lifetime_months), order.units);
      fleet_row(t, f, "build", order.units, 0.0, before, 0.0);
    } else {
      for (int u = 0; u < order.units; ++u) {
        const FacilityId id{kFirstReactor + static_cast<std::uint32_t>(reactors_.size())};
        const int serial = ++built_[static_cast<int>(order.kind)];
        names_.push_back(fmt::format("{}_{:04d}", prototype_name(order.kind), serial));
        kinds_.push_back(order.kind);
        reactors_.emplace_back(id, spec, clock_, t);
        active_.push_back(reactors_.size() - 1);
        log({t, id, ReactorEventKind::Commission, spec.power_MWe});
      }
    }
    alive_[static_cast<int>(order.kind)] += order.units;
    deployment_row(t, order.kind, order.units, 0);
  }

  void produce(Step t) {
    for (auto [sep, node] : {std::pair{&lwr_sep_, Node::LwrSeparations},
                             std::pair{&sfr_sep_, Node::SfrSeparations}}) {
      SeparatedStreams out = sep->separations_tick(t);
      fab_.accept_fissile(out.fissile, t);
      sep_u_.accept(out.uranium);
      waste_.accept(out.waste);
      flow(node, Node::Fabrication, Commodity::SeparatedFissile, out.fissile);
      flow(node, Node::SeparatedU, Commodity::SeparatedUranium, out.uranium);
      flow(node, Node::Waste, Commodity::Waste, out.waste);
    }
  }

  void exchange(Step t) {
    std::vector<Request> requests;
    auto add = [&](std::optional<Request> r) {
      if (!r) return;
      r->tie_key = tie_key(s_.tie_break, s_.seed, r->requester);
      requests.push_back(*r);
    };
    if (fleet()) {
      add(lwr_fleet_->request());
      add(sfr_fleet_->request());
    } else {
      for (std::size_t i : active_) add(reactors_[i].request(s_.fuel_sharing_preference));
    }
    add(lwr_sep_.request(t));
    add(sfr_sep_.request(t));
    if (requests.empty()) return;

    // Offers are limited to what each supplier holds at the start of the step.
    const double fab_avail = fab_.available_output(t);
    const double lwr_spent = lwr_storage_.biddable(t);
    const double sfr_spent = sfr_storage_.biddable(t);
    const Composition fab_comp = fab_.output_composition(t, du_source_.recipe());
    SupplierCaps caps{{kFabrication, fab_avail}, {kLwrStorage, lwr_spent}, {kSfrStorage, sfr_spent}};
    std::vector<Bid> bids;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const Request& r = requests[i];
      switch (r.commodity) {
        case Commodity::FreshLwrFuel:
          bids.push_back({kLwrSource, i, r.quantity, lwr_source_.recipe().fractions});
          break;
        case Commodity::FreshSfrFuel:
          if (fab_avail > 0.0) bids.push_back({kFabrication, i, fab_avail, fab_comp});
          break;
        case Commodity::SpentLwrFuel:
          if (lwr_spent > 0.0) {
            bids.push_back({kLwrStorage, i, lwr_spent, lwr_storage_.head_composition()});
          }
          break;
        case Commodity::SpentSfrFuel:
          if (sfr_spent > 0.0) {
            bids.push_back({kSfrStorage, i, sfr_spent, sfr_storage_.head_composition()});
          }
          break;
        default:
          break;
      }
    }

    for (const Allocation& a : resolve(requests, bids, caps)) deliver(a, t);
  }

  void deliver(const Allocation& a, Step t) {
    Material m;
    Node from = Node::LwrSource;
    if (a.supplier == kLwrSource) {
      m = inject(lwr_source_, a.mass);
    } else if (a.supplier == kFabrication) {
      auto r = fab_.fabricate(a.mass, t, du_source_);
      injected_ += r.output.mass() - r.fissile_used.mass();
      flow(Node::DuSource, Node::Fabrication, Commodity::DepletedUranium,
           Material::from_recipe(r.du_kg, du_source_.recipe()));
      m = r.output;
      from = Node::Fabrication;
    } else if (a.supplier == kLwrStorage) {
      m = lwr_storage_.withdraw(a.mass, t);
      from = Node::LwrStorage;
    } else if (a.supplier == kSfrStorage) {
      m = sfr_storage_.withdraw(a.mass, t);
      from = Node::SfrStorage;
    } else {
      throw Error("allocation from unknown supplier " + std::to_string(a.supplier.value));
    }

    if (a.requester == kLwrSeparations) {
      lwr_sep_.accept(m);
      flow(from, Node::LwrSeparations, a.commodity, m);
    } else if (a.requester == kSfrSeparations) {
      sfr_sep_.accept(m);
      flow(from, Node::SfrSeparations, a.commodity, m);
    } else if (a.requester == kLwrFleet || a.requester == kSfrFleet) {
      ReactorFleet& f = a.requester == kLwrFleet ? *lwr_fleet_ : *sfr_fleet_;
      const double accepted = f.refuel(m);
      if (accepted < m.mass() * (1.0 - kMassRelTol)) {
        throw Error("fleet refused " + std::to_string(m.mass() - accepted) + " kg");
      }
      flow(from, reactor_node(f.spec()), a.commodity, m);
    } else if (a.requester.value >= kFirstReactor) {
      Reactor& r = reactors_.at(a.requester.value - kFirstReactor);
      const int batches = r.receive(m);
      log({t, r.id(), ReactorEventKind::BatchReceived, static_cast<double>(batches)});
      flow(from, reactor_node(r.spec()), a.commodity, m);
    } else {
      throw Error("allocation to unknown requester " + std::to_string(a.requester.value));
    }
  }

  double tick(Step t) {
    double generated = 0.0;
    if (fleet()) {
      for (ReactorFleet* f : {&*lwr_fleet_, &*sfr_fleet_}) {
        generated += f->generated_power_MWe();
        to_storage(f->spec(), f->discharge(), t);
      }
    } else {
      for (std::size_t i : active_) {
        Reactor& r = reactors_[i];
        auto out = r.tick(t);
        for (const auto& m : out.discharged) to_storage(r.spec(), m, t);
        for (const auto& e : out.events) log(e);
        generated += r.generated_power_MWe();
      }
    }
    return generated;
  }

  void inventory_row(Step t, Node n, Commodity c, double kg, double pu) {
    inventories_.field(t).field(clock_.month(t)).field(node_name(n)).field(to_string(c));
    inventories_.field(kg).field(pu);
    inventories_.end_row();
  }

  void snapshot(Step t, double generated) {
    const int month = clock_.month(t);
    power_.field(t).field(month).field(installed_nameplate()).field(installed_effective());
    power_.field(generated).field(target_capacity(s_.deployment, month));
    power_.end_row();

    for (const auto& [key, f] : step_flows_) {
      const auto& [from, to, c] = key;
      flows_.field(t).field(month).field(node_name(from)).field(node_name(to)).field(to_string(c));
      flows_.field(f.kg).field(f.pu);
      flows_.end_row();
    }
    step_flows_.clear();

    // Reactor cores by type.
    std::array<long double, 2> core_kg{}, core_pu{};
    if (fleet()) {
      for (const ReactorFleet* f : {&*lwr_fleet_, &*sfr_fleet_}) {
        const int k = f == &*lwr_fleet_ ? 0 : 1;
        core_kg[k] = f->core_inventory();
        core_pu[k] = f->core_inventory() * f->spec().fresh.fraction(Isotope::Pu239);
      }
    } else {
      for (std::size_t i : active_) {
        const Reactor& r = reactors_[i];
        const int k = reactor_node(r.spec()) == Node::LwrReactors ? 0 : 1;
        core_kg[k] += r.core_mass();
        core_pu[k] += r.core_isotope_mass(Isotope::Pu239);
      }
    }

    long double total = 0.0L;
    auto row = [&](Node n, Commodity c, long double kg, long double pu) {
      total += kg;
      inventory_row(t, n, c, static_cast<double>(kg), static_cast<double>(pu));
    };
    row(Node::LwrReactors, s_.lwr.fuel_in, core_kg[0], core_pu[0]);
    row(Node::SfrReactors, s_.sfr.fuel_in, core_kg[1], core_pu[1]);
    row(Node::LwrStorage, lwr_storage_.commodity_in(), lwr_storage_.inventory(),
        lwr_storage_.inventory(Isotope::Pu239));
    row(Node::SfrStorage, sfr_storage_.commodity_in(), sfr_storage_.inventory(),
        sfr_storage_.inventory(Isotope::Pu239));
    row(Node::LwrSeparations, s_.facilities.lwr_separations.input, lwr_sep_.buffered(),
        lwr_sep_.buffer().isotope_mass(Isotope::Pu239));
    row(Node::SfrSeparations, s_.facilities.sfr_separations.input, sfr_sep_.buffered(),
        sfr_sep_.buffer().isotope_mass(Isotope::Pu239));
    row(Node::Fabrication, Commodity::SeparatedFissile, fab_.inventory(),
        fab_.inventory(Isotope::Pu239));
    row(Node::SeparatedU, Commodity::SeparatedUranium, sep_u_.inventory(),
        sep_u_.inventory(Isotope::Pu239));
    row(Node::Waste, Commodity::Waste, waste_.inventory(), waste_.inventory(Isotope::Pu239));

    const long double residual = injected_ + overdraw_ - total;
    const double r = static_cast<double>(residual);
    max_residual_ = std::max(max_residual_, std::abs(r));
    balance_.field(t).field(month).field(static_cast<double>(injected_));
    balance_.field(static_cast<double>(overdraw_)).field(static_cast<double>(total)).field(r);
    balance_.end_row();
  }

  void step(Step t) {
    deploy(t);
    produce(t);
    exchange(t);
    const double generated = tick(t);
    snapshot(t, generated);
  }

  void finish() {
    csv::Writer info(dir_ / "run_info.csv", {"key", "value"});
    info.field("case").field(to_string(s_.case_id)).end_row();
    info.field("paradigm").field(to_string(s_.paradigm)).end_row();
    info.field("dt_months").field(clock_.dt_months()).end_row();
    info.field("steps").field(clock_.horizon()).end_row();
    info.field("horizon_years").field(s_.horizon_years).end_row();
    info.field("sfr_power_MWe").field(s_.sfr.power_MWe).end_row();
    info.field("seed").field(static_cast<long long>(s_.seed)).end_row();
    info.field("fuel_sharing_preference").field(s_.fuel_sharing_preference ? "on" : "off").end_row();
    info.field("tie_break").field(s_.tie_break == TieBreak::Hashed ? "hashed" : "requester-id");
    info.end_row();
    info.close();

    csv::Writer rt(dir_ / "reactors.csv",
                   {"reactor_id", "reactor", "prototype", "power_MWe", "outage_steps"});
    for (std::size_t i = 0; i < reactors_.size(); ++i) {
      const Reactor& r = reactors_[i];
      rt.field(static_cast<long long>(r.id().value)).field(names_[i]);
      rt.field(prototype_name(kinds_[i])).field(r.spec().power_MWe).field(r.outage_steps());
      rt.end_row();
    }
    rt.close();
    for (csv::Writer* w : {&power_, &flows_, &inventories_, &events_, &deployment_,
                           &fleet_events_, &balance_}) {
      w->close();
    }
  }

  const Scenario& s_;
  SimClock clock_;
  Source lwr_source_;
  Source du_source_;
  Storage lwr_storage_;
  Storage sfr_storage_;
  Separations lwr_sep_;
  Separations sfr_sep_;
  Fabrication fab_;
  Sink sep_u_;
  Sink waste_;
  std::optional<ReactorFleet> lwr_fleet_;
  std::optional<ReactorFleet> sfr_fleet_;

  std::vector<Reactor> reactors_;  // index = id - kFirstReactor
  std::vector<std::string> names_;
  std::vector<ReactorKind> kinds_;
  std::vector<std::size_t> active_;  // ascending id
  std::array<int, 3> alive_{};
  std::array<int, 3> built_{};

  std::map<std::tuple<Node, Node, Commodity>, FlowSum> step_flows_;
  long double injected_ = 0.0L;
  long double overdraw_ = 0.0L;
  double max_residual_ = 0.0;

  csv::Writer power_;
  csv::Writer flows_;
  csv::Writer inventories_;
  csv::Writer events_;
  csv::Writer deployment_;
  csv::Writer fleet_events_;
  csv::Writer balance_;
  std::filesystem::path dir_;
};

}  // namespace

RunSummary run(const Scenario& scenario, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  scenario.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  RunSummary summary;
  {
    Simulation sim(scenario, out_dir);
    summary.max_balance_residual_kg = sim.run();
  }
  summary.steps = scenario.clock().horizon();
  summary.metrics = compute_metrics(out_dir);
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace fcsim
