/* C interface to the fuel cycle simulator. */
#ifndef FCSIM_FCSIM_H
#define FCSIM_FCSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FCS_API __declspec(dllexport)
#else
#define FCS_API __attribute__((visibility("default")))
#endif

typedef enum fcs_status {
  FCS_OK = 0,
  FCS_INVALID_ARGUMENT = 1,
  FCS_PARSE_ERROR = 2,      /* scenario document is not valid JSON */
  FCS_VALIDATION_ERROR = 3, /* scenario rejected by validation */
  FCS_IO_ERROR = 4,
  FCS_INTERNAL_ERROR = 5
} fcs_status;

typedef struct fcs_scenario fcs_scenario;

typedef struct fcs_summary {
  int32_t steps;
  int32_t dt_months;
  double generated_MWe_months;
  double cumulative_outage_MWe_months;
  double cumulative_wasted_batch_months;
  double fuel_sharing_bound_GWe_months;
  int32_t shortage_steps;
  int32_t first_shortage_month; /* -1 when no shortage */
  double max_balance_residual_kg;
  double wall_seconds; /* 0 for fcs_metrics */
} fcs_summary;

FCS_API const char* fcs_version(void);

/* Message for the last failed call on this thread; "" if none. */
FCS_API const char* fcs_last_error(void);

FCS_API fcs_status fcs_scenario_load(const char* path, fcs_scenario** out);
FCS_API fcs_status fcs_scenario_parse(const char* text, fcs_scenario** out);
FCS_API void fcs_scenario_free(fcs_scenario* scenario);

FCS_API fcs_status fcs_scenario_set_seed(fcs_scenario* scenario, uint64_t seed);
FCS_API fcs_status fcs_scenario_set_fuel_sharing(fcs_scenario* scenario, int enabled);
/* Case id ("MI", "MF", "QI", "QF"); valid while the scenario lives. */
FCS_API const char* fcs_scenario_case_id(const fcs_scenario* scenario);

/* Runs the scenario, writing all tables into out_dir. summary may be NULL. */
FCS_API fcs_status fcs_run(const fcs_scenario* scenario, const char* out_dir,
                           fcs_summary* summary);

/* Recomputes metrics.csv and metrics_summary.csv for a finished run. */
FCS_API fcs_status fcs_metrics(const char* run_dir, fcs_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
