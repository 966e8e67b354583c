#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fcsim/core.hpp"
#include "fcsim/deployment.hpp"
#include "fcsim/facilities.hpp"
#include "fcsim/reactor.hpp"

namespace fcsim {

enum class Paradigm { Individual, Fleet };
enum class CaseId { MI, MF, QI, QF };

std::string_view to_string(Paradigm p);
std::string_view to_string(CaseId c);
std::optional<CaseId> parse_case_id(std::string_view s);

/// (dt, paradigm) fixed by each case: M = monthly, Q = quarterly,
/// I = individual reactors, F = fleet reactors.
int case_dt_months(CaseId c);
Paradigm case_paradigm(CaseId c);

/// How equal-preference requests are ordered in the exchange.
enum class TieBreak {
  /// Seeded hash of the requester id: a fixed pseudo-random order for the
  /// whole run.
  Hashed,
  /// Requester id ascending, then submission order.
  RequesterId,
};

struct FacilitiesConfig {
  std::string lwr_fresh_recipe = "lwr_fresh";
  std::string du_recipe = "du";
  int storage_residence_months = 84;
  SeparationsSpec lwr_separations;
  SeparationsSpec sfr_separations;
  std::string fabrication_target_recipe = "sfr_fresh";
};

struct Scenario {
  CaseId case_id = CaseId::MI;
  Paradigm paradigm = Paradigm::Individual;
  int dt_months = 1;
  int horizon_years = 200;
  std::uint64_t seed = 0;
  bool fuel_sharing_preference = false;
  TieBreak tie_break = TieBreak::Hashed;

  std::map<std::string, Recipe> recipes;
  ReactorSpec initial_lwr;
  ReactorSpec lwr;
  ReactorSpec sfr;
  FacilitiesConfig facilities;
  DeploymentPlan deployment;

  SimClock clock() const { return SimClock(dt_months, horizon_years); }
  const Recipe& recipe(const std::string& name) const;
  /// Throws ConfigError describing the first violation.
  void validate() const;
};

/// Parses and validates a scenario document. Errors carry the path of the
/// offending field, e.g. "reactors.sfr.cycle_months: ...".
Scenario parse_scenario(const std::filesystem::path& file);
Scenario parse_scenario_text(std::string_view text, const std::string& origin = "<scenario>");

/// Location of a bundled suite case, e.g. <dir>/eg23_MI.json.
std::filesystem::path suite_case_path(const std::filesystem::path& dir, std::string_view suite,
                                      CaseId c);

}  // namespace fcsim
