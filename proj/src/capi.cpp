#include "fcsim/fcsim.h"

#include <exception>
#include <string>

#include "fcsim/kernel.hpp"
#include "fcsim/metrics.hpp"
#include "fcsim/scenario.hpp"

struct fcs_scenario {
  fcsim::Scenario scenario;
  std::string case_id;
};

namespace {

thread_local std::string g_last_error;

fcs_status fail(fcs_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Maps exceptions escaping the C++ core onto status codes.
template <class F>
fcs_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return FCS_OK;
  } catch (const fcsim::ParseError& e) {
    return fail(FCS_PARSE_ERROR, e.what());
  } catch (const fcsim::ConfigError& e) {
    return fail(FCS_VALIDATION_ERROR, e.what());
  } catch (const fcsim::IoError& e) {
    return fail(FCS_IO_ERROR, e.what());
  } catch (const fcsim::ValueError& e) {
    return fail(FCS_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FCS_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(FCS_INTERNAL_ERROR, "unknown error");
  }
}

void fill(fcs_summary* out, const fcsim::MetricsSummary& m) {
  out->steps = m.steps;
  out->dt_months = m.dt_months;
  out->generated_MWe_months = m.generated_MWe_months;
  out->cumulative_outage_MWe_months = m.cumulative_outage_MWe_months;
  out->cumulative_wasted_batch_months = m.cumulative_wasted_batch_months;
  out->fuel_sharing_bound_GWe_months = m.fuel_sharing_bound_GWe_months;
  out->shortage_steps = m.shortage_steps;
  out->first_shortage_month = m.first_shortage_month;
  out->max_balance_residual_kg = m.max_balance_residual_kg;
  out->wall_seconds = 0.0;
}


}  // namespace

extern "C" {

const char* fcs_version(void) { return "1.0.0"; }

const char* fcs_last_error(void) { return g_last_error.c_str(); }

fcs_status fcs_scenario_load(const char* path, fcs_scenario** out) {
  if (path == nullptr || out == nullptr) return fail(FCS_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* s = new fcs_scenario{fcsim::parse_scenario(path), {}};
    s->case_id = std::string(fcsim::to_string(s->scenario.case_id));
    *out = s;
  });
}

fcs_status fcs_scenario_parse(const char* text, fcs_scenario** out) {
  if (text == nullptr || out == nullptr) return fail(FCS_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* s = new fcs_scenario{fcsim::parse_scenario_text(text), {}};
    s->case_id = std::string(fcsim::to_string(s->scenario.case_id));
    *out = s;
  });
}

void fcs_scenario_free(fcs_scenario* scenario) { delete scenario; }

fcs_status fcs_scenario_set_seed(fcs_scenario* scenario, uint64_t seed) {
  if (scenario == nullptr) return fail(FCS_INVALID_ARGUMENT, "null scenario");
  scenario->scenario.seed = seed;
  return FCS_OK;
}

fcs_status fcs_scenario_set_fuel_sharing(fcs_scenario* scenario, int enabled) {
  if (scenario == nullptr) return fail(FCS_INVALID_ARGUMENT, "null scenario");
  scenario->scenario.fuel_sharing_preference = enabled != 0;
  return FCS_OK;
}

const char* fcs_scenario_case_id(const fcs_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->case_id.c_str();
}

fcs_status fcs_run(const fcs_scenario* scenario, const char* out_dir, fcs_summary* summary) {
  if (scenario == nullptr || out_dir == nullptr) return fail(FCS_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const fcsim::RunSummary r = fcsim::run(scenario->scenario, out_dir);
    if (summary != nullptr) {
      fill(summary, r.metrics);
      summary->wall_seconds = r.wall_seconds;
    }
  });
}

fcs_status fcs_metrics(const char* run_dir, fcs_summary* summary) {
  if (run_dir == nullptr) return fail(FCS_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const fcsim::MetricsSummary m = fcsim::compute_metrics(run_dir);
    if (summary != nullptr) fill(summary, m);
  });
}

}  // extern "C"
