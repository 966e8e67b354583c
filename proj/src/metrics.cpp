#include "fcsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "fcsim/csv.hpp"

namespace fcsim {

EventLog EventLog::from_events(Step steps, std::span<const ReactorInfo> reactors,
                               std::span<const ReactorEvent> events) {
  std::map<FacilityId, std::size_t> slot;
  std::vector<std::vector<const ReactorEvent*>> per_reactor(reactors.size());
  for (std::size_t i = 0; i < reactors.size(); ++i) slot[reactors[i].id] = i;
  for (const auto& e : events) {
    auto it = slot.find(e.reactor);
    if (it == slot.end()) {
      throw ValueError("event for unknown reactor " + std::to_string(e.reactor.value));
    }
    per_reactor[it->second].push_back(&e);
  }

  std::vector<ReactorHistory> out;
  out.reserve(reactors.size());
  for (std::size_t i = 0; i < reactors.size(); ++i) {
    auto& evs = per_reactor[i];
    std::stable_sort(evs.begin(), evs.end(),
                     [](const ReactorEvent* a, const ReactorEvent* b) { return a->t < b->t; });
    ReactorHistory h;
    h.info = reactors[i];
    h.commission = steps;
    h.end = steps;
    for (const auto* e : evs) {
      if (e->kind == ReactorEventKind::Commission) h.commission = std::min(h.commission, e->t);
      if (e->kind == ReactorEventKind::Retire) h.end = std::min(h.end, e->t);
    }
    if (h.commission >= steps && !evs.empty()) h.commission = evs.front()->t;
    h.end = std::max(h.end, h.commission);
    const auto span_len = static_cast<std::size_t>(h.end - h.commission);
    h.operating.assign(span_len, 0);
    h.batches.assign(span_len, 0);

    bool running = false;
    std::size_t k = 0;
    for (Step t = h.commission; t < h.end; ++t) {
      for (; k < evs.size() && evs[k]->t <= t; ++k) {
        const ReactorEvent& e = *evs[k];
        switch (e.kind) {
          case ReactorEventKind::CycleStart:
            running = true;
            break;
          case ReactorEventKind::OutageStart:
            running = false;
            h.outage_starts.push_back(e.t);
            break;
          case ReactorEventKind::ShortageWait:
          case ReactorEventKind::Retire:
            running = false;
            break;
          case ReactorEventKind::BatchReceived:
            if (e.t >= h.commission) h.batches[e.t - h.commission] += static_cast<int>(e.value);
            break;
          case ReactorEventKind::Commission:
          case ReactorEventKind::Discharge:
            break;
        }
      }
      h.operating[t - h.commission] = running ? 1 : 0;
    }
    out.push_back(std::move(h));
  }
  return EventLog(steps, std::move(out));
}

namespace {

struct GateInfo {
  bool shortage = false;
  Step since = 0;  // F_prev
};

GateInfo gate_at(const ReactorHistory& h, Step t) {
  GateInfo g;
  auto it = std::upper_bound(h.outage_starts.begin(), h.outage_starts.end(), t);
  Step gate = h.commission;
  g.since = h.commission;
  if (it != h.outage_starts.begin()) {
    const Step tau = *std::prev(it);
    gate = tau + h.info.outage_steps;
    g.since = tau;
  }
  g.shortage = t >= gate && h.operating[t - h.commission] == 0;
  return g;
}

}  // namespace

double outage_power(Step t, const EventLog& log) {
  double p = 0.0;
  for (const auto& h : log.reactors()) {
    if (h.alive(t) && gate_at(h, t).shortage) p += h.info.power_MWe;
  }
  return p;
}

double wasted_batches(Step t, const EventLog& log) {
  double n = 0.0;
  for (const auto& h : log.reactors()) {
    if (!h.alive(t)) continue;
    const GateInfo g = gate_at(h, t);
    if (!g.shortage) continue;
    for (Step s = std::max(g.since, h.commission); s <= t; ++s) n += h.batches[s - h.commission];
  }
  return n;
}

namespace {

// Single pass per reactor, carrying the latest outage start and the batches
// received since it.
void accumulate_series(const EventLog& log, std::vector<double>* power,
                       std::vector<double>* wasted) {
  for (const auto& h : log.reactors()) {
    std::size_t next_outage = 0;
    Step gate = h.commission;
    long since_outage = 0;
    for (Step t = h.commission; t < h.end && t < log.steps(); ++t) {
      while (next_outage < h.outage_starts.size() && h.outage_starts[next_outage] <= t) {
        gate = h.outage_starts[next_outage] + h.info.outage_steps;
        since_outage = 0;
        ++next_outage;
      }
      since_outage += h.batches[t - h.commission];
      if (t >= gate && h.operating[t - h.commission] == 0) {
        if (power != nullptr) (*power)[t] += h.info.power_MWe;
        if (wasted != nullptr) (*wasted)[t] += static_cast<double>(since_outage);
      }
    }
  }
}

}  // namespace

std::vector<double> outage_power_series(const EventLog& log) {
  std::vector<double> p(log.steps(), 0.0);
  accumulate_series(log, &p, nullptr);
  return p;
}

std::vector<double> wasted_batches_series(const EventLog& log) {
  std::vector<double> w(log.steps(), 0.0);
  accumulate_series(log, nullptr, &w);
  return w;
}

std::vector<double> fleet_outage_power(std::span<const double> installed_MWe,
                                       std::span<const double> generated_MWe) {
  if (installed_MWe.size() != generated_MWe.size()) {
    throw ValueError("installed and generated series differ in length");
  }
  std::vector<double> out(installed_MWe.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(0.0, installed_MWe[i] - generated_MWe[i]);
  }
  return out;
}

double fuel_sharing_energy_bound(double wasted_batch_months, double power_MWe) {
  return wasted_batch_months * power_MWe / 1000.0;
}

std::vector<double> normalized_power(std::span<const double> series,
                                     std::span<const double> curve) {
  if (series.size() != curve.size()) throw ValueError("series and curve differ in length");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = curve[i] != 0.0 ? series[i] / curve[i] : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<double> cumulative(std::span<const double> series, double scale) {
  std::vector<double> out(series.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    acc += series[i] * scale;
    out[i] = acc;
  }
  return out;
}

// Persisted-table evaluation ------------------------------------------------

namespace {

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  auto t = csv::Table::read(path);
  const auto k = t.column("key");
  const auto v = t.column("value");
  std::map<std::string, std::string> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out[t.at(r, k)] = t.at(r, v);
  return out;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key,
                           const std::filesystem::path& origin) {
  auto it = kv.find(key);
  if (it == kv.end()) throw IoError(origin.string() + ": missing key '" + key + "'");
  return it->second;
}

}  // namespace

EventLog load_event_log(const std::filesystem::path& dir) {
  const auto info = read_key_values(dir / "run_info.csv");
  const Step steps = std::stoi(require(info, "steps", dir / "run_info.csv"));

  auto rt = csv::Table::read(dir / "reactors.csv");
  const auto c_id = rt.column("reactor_id");
  const auto c_name = rt.column("reactor");
  const auto c_p = rt.column("power_MWe");
  const auto c_out = rt.column("outage_steps");
  std::vector<ReactorInfo> reactors;
  std::unordered_map<std::string, FacilityId> by_name;
  for (std::size_t r = 0; r < rt.rows(); ++r) {
    ReactorInfo ri;
    ri.id = FacilityId{static_cast<std::uint32_t>(rt.integer(r, c_id))};
    ri.name = rt.at(r, c_name);
    ri.power_MWe = rt.real(r, c_p);
    ri.outage_steps = static_cast<int>(rt.integer(r, c_out));
    by_name[ri.name] = ri.id;
    reactors.push_back(std::move(ri));
  }

  auto et = csv::Table::read(dir / "reactor_events.csv");
  const auto e_t = et.column("t");
  const auto e_r = et.column("reactor");
  const auto e_k = et.column("event");
  const auto e_v = et.column("value");
  std::vector<ReactorEvent> events;
  events.reserve(et.rows());
  for (std::size_t r = 0; r < et.rows(); ++r) {
    auto kind = parse_reactor_event(et.at(r, e_k));
    if (!kind) throw IoError("reactor_events.csv: unknown event '" + et.at(r, e_k) + "'");
    auto it = by_name.find(et.at(r, e_r));
    if (it == by_name.end()) {
      throw IoError("reactor_events.csv: unknown reactor '" + et.at(r, e_r) + "'");
    }
    events.push_back({static_cast<Step>(et.integer(r, e_t)), it->second, *kind, et.real(r, e_v)});
  }
  return EventLog::from_events(steps, reactors, events);
}

MetricsSummary compute_metrics(const std::filesystem::path& dir) {
  const auto info_path = dir / "run_info.csv";
  const auto info = read_key_values(info_path);
  MetricsSummary s;
  s.case_id = require(info, "case", info_path);
  s.paradigm = require(info, "paradigm", info_path);
  s.dt_months = std::stoi(require(info, "dt_months", info_path));
  s.steps = std::stoi(require(info, "steps", info_path));
  const double sfr_power = std::stod(require(info, "sfr_power_MWe", info_path));
  const double dt = s.dt_months;

  auto pt = csv::Table::read(dir / "power.csv");
  if (pt.rows() != static_cast<std::size_t>(s.steps)) {
    throw IoError("power.csv: expected " + std::to_string(s.steps) + " rows");
  }
  std::vector<double> installed(s.steps), generated(s.steps), target(s.steps);
  {
    const auto ci = pt.column("installed_MWe");
    const auto cg = pt.column("generated_MWe");
    const auto ct = pt.column("target_MWe");
    for (Step t = 0; t < s.steps; ++t) {
      installed[t] = pt.real(t, ci);
      generated[t] = pt.real(t, cg);
      target[t] = pt.real(t, ct);
    }
  }

  std::vector<double> outage;
  std::vector<double> wasted(s.steps, 0.0);
  if (s.paradigm == "fleet") {
    outage = fleet_outage_power(installed, generated);
  } else {
    const EventLog log = load_event_log(dir);
    outage = outage_power_series(log);
    wasted = wasted_batches_series(log);
  }
  const auto cum_outage = cumulative(outage, dt);
  const auto cum_wasted = cumulative(wasted, dt);
  const auto normalized = normalized_power(generated, target);

  std::vector<double> pu_inventory(s.steps, 0.0), pu_in(s.steps, 0.0), pu_out(s.steps, 0.0);
  {
    auto it = csv::Table::read(dir / "inventories.csv");
    const auto ct = it.column("t");
    const auto cf = it.column("facility");
    const auto cp = it.column("pu239_kg");
    for (std::size_t r = 0; r < it.rows(); ++r) {
      if (it.at(r, cf) == "fabrication") pu_inventory[it.integer(r, ct)] = it.real(r, cp);
    }
    auto ft = csv::Table::read(dir / "flows.csv");
    const auto gt = ft.column("t");
    const auto gf = ft.column("from");
    const auto gto = ft.column("to");
    const auto gp = ft.column("pu239_kg");
    for (std::size_t r = 0; r < ft.rows(); ++r) {
      const auto t = ft.integer(r, gt);
      if (ft.at(r, gto) == "fabrication") pu_in[t] += ft.real(r, gp);
      if (ft.at(r, gf) == "fabrication") pu_out[t] += ft.real(r, gp);
    }
  }

  {
    auto bt = csv::Table::read(dir / "balance.csv");
    const auto cr = bt.column("residual_kg");
    for (std::size_t r = 0; r < bt.rows(); ++r) {
      s.max_balance_residual_kg = std::max(s.max_balance_residual_kg, std::abs(bt.real(r, cr)));
    }
  }

  csv::Writer w(dir / "metrics.csv",
                {"t", "month", "installed_MWe", "generated_MWe", "target_MWe", "normalized_power",
                 "outage_MWe", "cumulative_outage_MWe_months", "wasted_batches",
                 "cumulative_wasted_batch_months", "pu_inventory_kg", "pu_inflow_kg",
                 "pu_outflow_kg"});
  for (Step t = 0; t < s.steps; ++t) {
    w.field(t)
        .field(static_cast<int>(t * s.dt_months))
        .field(installed[t])
        .field(generated[t])
        .field(target[t])
        .field(normalized[t])
        .field(outage[t])
        .field(cum_outage[t])
        .field(wasted[t])
        .field(cum_wasted[t])
        .field(pu_inventory[t])
        .field(pu_in[t])
        .field(pu_out[t]);
    w.end_row();
    s.generated_MWe_months += generated[t] * dt;
    if (outage[t] > 1e-6) {
      ++s.shortage_steps;
      if (s.first_shortage_month < 0) s.first_shortage_month = t * s.dt_months;
      s.last_shortage_month = t * s.dt_months;
    }
  }
  w.close();

  s.cumulative_outage_MWe_months = cum_outage.empty() ? 0.0 : cum_outage.back();
  s.cumulative_wasted_batch_months = cum_wasted.empty() ? 0.0 : cum_wasted.back();
  s.fuel_sharing_bound_GWe_months =
      fuel_sharing_energy_bound(s.cumulative_wasted_batch_months, sfr_power);

  csv::Writer sw(dir / "metrics_summary.csv", {"key", "value"});
  sw.field("case").field(s.case_id).end_row();
  sw.field("paradigm").field(s.paradigm).end_row();
  sw.field("dt_months").field(s.dt_months).end_row();
  sw.field("steps").field(s.steps).end_row();
  sw.field("generated_MWe_months").field(s.generated_MWe_months).end_row();
  sw.field("cumulative_outage_MWe_months").field(s.cumulative_outage_MWe_months).end_row();
  sw.field("cumulative_wasted_batch_months").field(s.cumulative_wasted_batch_months).end_row();
  sw.field("fuel_sharing_bound_GWe_months").field(s.fuel_sharing_bound_GWe_months).end_row();
  sw.field("shortage_steps").field(s.shortage_steps).end_row();
  sw.field("first_shortage_month").field(s.first_shortage_month).end_row();
  sw.field("last_shortage_month").field(s.last_shortage_month).end_row();
  sw.field("max_balance_residual_kg").field(s.max_balance_residual_kg).end_row();
  sw.close();
  return s;
}

}  // namespace fcsim
