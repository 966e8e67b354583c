#include "fcsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fcsim {

using json = nlohmann::json;

std::string_view to_string(Paradigm p) {
  return p == Paradigm::Individual ? "individual" : "fleet";
}

std::string_view to_string(CaseId c) {
  switch (c) {
    case CaseId::MI:
      return "MI";
    case CaseId::MF:
      return "MF";
    case CaseId::QI:
      return "QI";
    case CaseId::QF:
      return "QF";
  }
  return "?";
}

std::optional<CaseId> parse_case_id(std::string_view s) {
  for (auto c : {CaseId::MI, CaseId::MF, CaseId::QI, CaseId::QF}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

int case_dt_months(CaseId c) { return (c == CaseId::MI || c == CaseId::MF) ? 1 : 3; }

Paradigm case_paradigm(CaseId c) {
  return (c == CaseId::MI || c == CaseId::QI) ? Paradigm::Individual : Paradigm::Fleet;
}

const Recipe& Scenario::recipe(const std::string& name) const {
  auto it = recipes.find(name);
  if (it == recipes.end()) throw ConfigError("unknown recipe '" + name + "'");
  return it->second;
}

void Scenario::validate() const {
  if (case_dt_months(case_id) != dt_months) {
    throw ConfigError("case: " + std::string(to_string(case_id)) + " requires dt_months = " +
                      std::to_string(case_dt_months(case_id)));
  }
  if (case_paradigm(case_id) != paradigm) {
    throw ConfigError("case: " + std::string(to_string(case_id)) + " requires the " +
                      std::string(to_string(case_paradigm(case_id))) + " paradigm");
  }
  const SimClock c = clock();
  for (const ReactorSpec* spec : {&initial_lwr, &lwr, &sfr}) spec->validate(c);
  if (paradigm == Paradigm::Fleet &&
      (initial_lwr.batch_kg != lwr.batch_kg || initial_lwr.batches_per_core != lwr.batches_per_core ||
       initial_lwr.period_months() != lwr.period_months() ||
       initial_lwr.power_MWe != lwr.power_MWe)) {
    throw ConfigError("reactors.lwr_init: must match reactors.lwr in the fleet paradigm");
  }
  if (!c.divides(facilities.storage_residence_months)) {
    throw ConfigError("facilities.storage.residence_months: " +
                      std::to_string(facilities.storage_residence_months) +
                      " is not a multiple of the time step");
  }
  for (const auto* sep : {&facilities.lwr_separations, &facilities.sfr_separations}) {
    for (const auto& p : sep->schedule) {
      if (!c.divides(p.start_month)) {
        throw ConfigError("facilities." + sep->name + ".schedule: start month " +
                          std::to_string(p.start_month) + " is not a multiple of the time step");
      }
    }
  }
  recipe(facilities.lwr_fresh_recipe);
  recipe(facilities.du_recipe);
  recipe(facilities.fabrication_target_recipe);
  deployment.validate(c);
}

namespace {

/// A JSON value together with its dotted path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  Node operator[](const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) Node(j_, child(key)).fail("missing required field");
    return Node(*it, child(key));
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }

  int integer() const {
    if (!j_.is_number()) fail("expected an integer");
    const double v = j_.get<double>();
    if (v != std::floor(v) || std::abs(v) > 1e9) fail("expected an integer");
    return static_cast<int>(v);
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? (*this)[key].number() : fallback;
  }

 private:
  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& j_;
  std::string path_;
};

Commodity parse_commodity(const Node& n) {
  const std::string s = n.string();
  for (auto c : {Commodity::FreshLwrFuel, Commodity::FreshSfrFuel, Commodity::SpentLwrFuel,
                 Commodity::SpentSfrFuel, Commodity::SeparatedFissile, Commodity::DepletedUranium}) {
    if (to_string(c) == s) return c;
  }
  n.fail("unknown commodity '" + s + "'");
}

Recipe parse_recipe(const std::string& name, const Node& n) {
  const Node comp = n["composition"];
  if (!comp.raw().is_object()) comp.fail("expected an object of isotope fractions");
  Composition f{};
  for (auto it = comp.raw().begin(); it != comp.raw().end(); ++it) {
    auto iso = parse_isotope(it.key());
    if (!iso) comp.fail("unknown isotope '" + it.key() + "'");
    f[index(*iso)] = comp[it.key()].number();
  }
  try {
    return Recipe(name, f);
  } catch (const ValueError& e) {
    comp.fail(e.what());
  }
}

ReactorSpec parse_reactor(const std::string& name, const Node& n, const Scenario& s) {
  ReactorSpec r;
  r.name = name;
  r.fuel_in = parse_commodity(n["fuel_in"]);
  r.fuel_out = parse_commodity(n["fuel_out"]);
  r.batch_kg = n["batch_kg"].number();
  r.batches_per_core = n["batches_per_core"].integer();
  r.cycle_months = n["cycle_months"].integer();
  r.outage_months = n["outage_months"].integer();
  r.power_MWe = n["power_MWe"].number();
  r.lifetime_months = n["lifetime_years"].integer() * 12;
  const Node fresh = n["fresh_recipe"];
  const Node spent = n["spent_recipe"];
  auto lookup = [&](const Node& ref) {
    auto it = s.recipes.find(ref.string());
    if (it == s.recipes.end()) ref.fail("unknown recipe '" + ref.string() + "'");
    return it->second;
  };
  r.fresh = lookup(fresh);
  r.spent = lookup(spent);

  const SimClock clock = s.clock();
  for (const char* key : {"cycle_months", "outage_months"}) {
    const int months = n[key].integer();
    if (months < 0) n[key].fail("must be non-negative");
    if (!clock.divides(months)) {
      n[key].fail(std::to_string(months) + " is not a multiple of the " +
                  std::to_string(clock.dt_months()) + "-month time step");
    }
  }
  try {
    r.validate(clock);
  } catch (const ConfigError& e) {
    n.fail(e.what());
  }
  return r;
}

SeparationsSpec parse_separations(const std::string& name, Commodity input, const Node& n,
                                  const StreamMap& streams) {
  SeparationsSpec spec;
  spec.name = name;
  spec.input = input;
  spec.streams = streams;
  const Node sched = n["schedule"];
  if (!sched.raw().is_array()) sched.fail("expected an array");
  for (std::size_t i = 0; i < sched.raw().size(); ++i) {
    Node p(sched.raw()[i], sched.path() + "[" + std::to_string(i) + "]");
    CapacityPeriod period;
    period.start_month = p["start_month"].integer();
    const Node cap = p["annual_MTHM"];
    if (cap.raw().is_string() && cap.raw().get<std::string>() == "unlimited") {
      period.annual_kg = kUnlimited;
    } else {
      period.annual_kg = cap.number() * 1000.0;
      if (period.annual_kg < 0.0) cap.fail("must be non-negative");
    }
    if (!spec.schedule.empty() && period.start_month <= spec.schedule.back().start_month) {
      p["start_month"].fail("schedule must be in increasing month order");
    }
    spec.schedule.push_back(period);
  }
  return spec;
}

StreamMap parse_streams(const Node& n) {
  StreamMap m = default_stream_map();
  if (!n.raw().is_object()) n.fail("expected an object");
  for (auto it = n.raw().begin(); it != n.raw().end(); ++it) {
    auto iso = parse_isotope(it.key());
    if (!iso) n.fail("unknown isotope '" + it.key() + "'");
    const std::string s = n[it.key()].string();
    if (s == "fissile") {
      m[index(*iso)] = Stream::Fissile;
    } else if (s == "uranium") {
      m[index(*iso)] = Stream::Uranium;
    } else if (s == "waste") {
      m[index(*iso)] = Stream::Waste;
    } else {
      n[it.key()].fail("stream must be fissile, uranium or waste");
    }
  }
  return m;
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    const Node root(doc, "");
    Scenario s;
    const Node case_node = root["case"];
    auto cid = parse_case_id(case_node.string());
    if (!cid) case_node.fail("must be one of MI, MF, QI, QF");
    s.case_id = *cid;

    const Node paradigm = root["paradigm"];
    const std::string p = paradigm.string();
    if (p == "individual") {
      s.paradigm = Paradigm::Individual;
    } else if (p == "fleet") {
      s.paradigm = Paradigm::Fleet;
    } else {
      paradigm.fail("must be 'individual' or 'fleet'");
    }

    const Node clock = root["clock"];
    s.dt_months = clock["dt_months"].integer();
    if (s.dt_months != 1 && s.dt_months != 3) clock["dt_months"].fail("must be 1 or 3");
    s.horizon_years = clock["horizon_years"].integer();
    if (s.horizon_years < 1) clock["horizon_years"].fail("must be positive");
    if (case_dt_months(s.case_id) != s.dt_months) {
      clock["dt_months"].fail("case " + case_node.string() + " requires " +
                              std::to_string(case_dt_months(s.case_id)));
    }
    if (case_paradigm(s.case_id) != s.paradigm) {
      paradigm.fail("case " + case_node.string() + " requires '" +
                    std::string(to_string(case_paradigm(s.case_id))) + "'");
    }

    if (root.has("seed")) {
      const Node seed = root["seed"];
      if (!seed.raw().is_number_unsigned() && !seed.raw().is_number_integer()) {
        seed.fail("expected a non-negative integer");
      }
      s.seed = seed.raw().get<std::uint64_t>();
    }
    if (root.has("exchange")) {
      const Node ex = root["exchange"];
      if (ex.has("fuel_sharing_preference")) {
        s.fuel_sharing_preference = ex["fuel_sharing_preference"].boolean();
      }
      if (ex.has("tie_break")) {
        const std::string tb = ex["tie_break"].string();
        if (tb == "hashed") {
          s.tie_break = TieBreak::Hashed;
        } else if (tb == "requester-id") {
          s.tie_break = TieBreak::RequesterId;
        } else {
          ex["tie_break"].fail("must be 'hashed' or 'requester-id'");
        }
      }
    }

    const Node recipes = root["recipes"];
    if (!recipes.raw().is_object()) recipes.fail("expected an object");
    for (auto it = recipes.raw().begin(); it != recipes.raw().end(); ++it) {
      s.recipes.emplace(it.key(), parse_recipe(it.key(), recipes[it.key()]));
    }

    const Node reactors = root["reactors"];
    s.initial_lwr = parse_reactor("lwr_init", reactors["lwr_init"], s);
    s.lwr = parse_reactor("lwr", reactors["lwr"], s);
    s.sfr = parse_reactor("sfr", reactors["sfr"], s);

    const Node fac = root["facilities"];
    s.facilities.lwr_fresh_recipe = fac["lwr_fresh_source"]["recipe"].string();
    s.facilities.du_recipe = fac["du_source"]["recipe"].string();
    s.facilities.storage_residence_months = fac["storage"]["residence_months"].integer();
    const StreamMap streams = fac.has("streams") ? parse_streams(fac["streams"]) : default_stream_map();
    s.facilities.lwr_separations =
        parse_separations("lwr_separations", s.lwr.fuel_out, fac["lwr_separations"], streams);
    s.facilities.sfr_separations =
        parse_separations("sfr_separations", s.sfr.fuel_out, fac["sfr_separations"], streams);
    s.facilities.fabrication_target_recipe = fac["fabrication"]["target_recipe"].string();
    for (auto [key, name] : {std::pair{"lwr_fresh_source", &s.facilities.lwr_fresh_recipe},
                             std::pair{"du_source", &s.facilities.du_recipe}}) {
      if (!s.recipes.count(*name)) fac[key]["recipe"].fail("unknown recipe '" + *name + "'");
    }
    if (!s.recipes.count(s.facilities.fabrication_target_recipe)) {
      fac["fabrication"]["target_recipe"].fail("unknown recipe '" +
                                               s.facilities.fabrication_target_recipe + "'");
    }

    const Node dep = root["deployment"];
    DeploymentPlan& d = s.deployment;
    d.base_capacity_MWe = dep["base_capacity_MWe"].number();
    d.annual_growth = dep["annual_growth"].number();
    d.build_period_months = dep["build_period_months"].integer();
    d.sfr_available_month = dep["sfr_available_month"].integer();
    d.initial_units = dep["initial_units"].integer();
    d.initial_retire_start_month = dep["initial_retire_start_month"].integer();
    d.initial_retire_span_months = dep["initial_retire_span_months"].integer();
    d.initial_unit_effective_MWe = s.initial_lwr.effective_power_MWe();
    d.lwr_unit_effective_MWe = s.lwr.effective_power_MWe();
    d.sfr_unit_effective_MWe = s.sfr.effective_power_MWe();
    if (!s.clock().divides(d.build_period_months)) {
      dep["build_period_months"].fail("not a multiple of the time step");
    }

    s.validate();
    return s;
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

Scenario parse_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), file.string());
}

std::filesystem::path suite_case_path(const std::filesystem::path& dir, std::string_view suite,
                                      CaseId c) {
  return dir / (std::string(suite) + "_" + std::string(to_string(c)) + ".json");
}

}  // namespace fcsim
