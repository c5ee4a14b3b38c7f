#ifndef SLITWAVE_H
#define SLITWAVE_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Electron rest energy in eV, for the `mass_ev` arguments.
 */
#define SW_ELECTRON_MASS_EV 510998.9500

/**
 * Result code of every fallible call.
 */
typedef enum SwStatus {
  SW_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SW_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SW_STATUS_INVALID_UTF8 = 2,
  /**
   * Parameters outside the physical or configured domain.
   */
  SW_STATUS_INVALID_ARGUMENT = 3,
  SW_STATUS_UNKNOWN_SCENARIO = 4,
  /**
   * The numerical oracle could not resolve the requested state, or a
   * feature extraction found nothing to measure.
   */
  SW_STATUS_NUMERICAL = 5,
  /**
   * Malformed JSON or an I/O failure.
   */
  SW_STATUS_PARSE = 6,
  /**
   * The requested quantity or column does not exist.
   */
  SW_STATUS_NOT_FOUND = 7,
  /**
   * The caller's buffer is shorter than the data.
   */
  SW_STATUS_BUFFER_TOO_SMALL = 8,
  /**
   * The library panicked. This is a bug.
   */
  SW_STATUS_INTERNAL = 9,
} SwStatus;

/**
 * Selects a column of a scenario result.
 */
typedef enum SwColumn {
  SW_COLUMN_X = 0,
  SW_COLUMN_ANALYTIC = 1,
  SW_COLUMN_NUMERIC = 2,
} SwColumn;

/**
 * The outcome of running a scenario (opaque).
 */
typedef struct SwResult SwResult;

/**
 * A scenario description (opaque).
 */
typedef struct SwScenario SwScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sw_version(void);

/**
 * Message of the most recent failed call on this thread, or null if none
 * has failed. The pointer stays valid until the next failing call on the
 * same thread.
 */
const char *sw_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void sw_string_free(char *s);

/**
 * Spacing of the energy fringes behind two pulses `delay_fs` apart, in eV.
 *
 * # Safety
 * `out_ev` must be valid for writes.
 */
enum SwStatus sw_energy_peak_spacing(double delay_fs, double *out_ev);

/**
 * Kinetic energy of spectral peak `order` for symmetric pulses, in eV.
 *
 * # Safety
 * `out_ev` must be valid for writes.
 */
enum SwStatus sw_time_slit_peak_energy(double mass_ev,
                                       double energy_ev,
                                       double delay_fs,
                                       int64_t order,
                                       double *out_ev);

/**
 * Local oscillation period of the density at `z_nm`, `t_fs`, in fs.
 *
 * # Safety
 * `out_fs` must be valid for writes.
 */
enum SwStatus sw_time_slit_period(double mass_ev,
                                  double energy_ev,
                                  double delay_fs,
                                  double z_nm,
                                  double t_fs,
                                  double *out_fs);

/**
 * Fringe visibility for slit weight `alpha` in [0, 1].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SwStatus sw_fringe_visibility(double alpha, double *out);

/**
 * Classical wave-front position after `t_fs`, in nm.
 *
 * # Safety
 * `out_nm` must be valid for writes.
 */
enum SwStatus sw_classical_displacement(double mass_ev,
                                        double energy_ev,
                                        double t_fs,
                                        double *out_nm);

/**
 * Current behind a shutter opened at `t = 0`, relative to the stationary
 * current, at `z_nm` and `t_fs`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SwStatus sw_shutter_current_ratio(double mass_ev,
                                       double energy_ev,
                                       double z_nm,
                                       double t_fs,
                                       double *out);

/**
 * Faddeeva function `w(re + i im)`.
 *
 * # Safety
 * `out_re` and `out_im` must be valid for writes.
 */
enum SwStatus sw_faddeeva(double re, double im, double *out_re, double *out_im);

/**
 * Fresnel integrals `C(u)` and `S(u)`.
 *
 * # Safety
 * `out_c` and `out_s` must be valid for writes.
 */
enum SwStatus sw_fresnel(double u, double *out_c, double *out_s);

/**
 * Newline-separated names of the builtin scenarios.
 *
 * # Safety
 * `out` must be valid for writes; free the string with [`sw_string_free`].
 */
enum SwStatus sw_builtin_names(char **out);

/**
 * Looks up a builtin scenario by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` valid for writes.
 */
enum SwStatus sw_scenario_builtin(const char *name, struct SwScenario **out);

/**
 * Parses a scenario from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum SwStatus sw_scenario_from_json(const char *json, struct SwScenario **out);

/**
 * Applies one `key=value` override, as accepted by the command line `--set`.
 * The scenario is unchanged when the override is rejected.
 *
 * # Safety
 * `scenario` must be a live handle and `assignment` a NUL-terminated string.
 */
enum SwStatus sw_scenario_set(struct SwScenario *scenario, const char *assignment);

/**
 * Serializes a scenario to JSON.
 *
 * # Safety
 * `scenario` must be a live handle and `out` valid for writes.
 */
enum SwStatus sw_scenario_to_json(const struct SwScenario *scenario, char **out);

/**
 * # Safety
 * `scenario` must be null or a handle not yet freed.
 */
void sw_scenario_free(struct SwScenario *scenario);

/**
 * Runs a scenario. The handle stays owned by the caller.
 *
 * # Safety
 * `scenario` must be a live handle and `out` valid for writes.
 */
enum SwStatus sw_scenario_run(const struct SwScenario *scenario, struct SwResult **out);

/**
 * Number of rows of the result table.
 *
 * # Safety
 * `result` must be a live handle and `out_len` valid for writes.
 */
enum SwStatus sw_result_len(const struct SwResult *result, size_t *out_len);

/**
 * Copies one column into `buffer`, which must hold at least
 * [`sw_result_len`] values. Asking for the numeric column of a run without
 * one yields `SW_STATUS_NOT_FOUND`.
 *
 * # Safety
 * `result` must be a live handle and `buffer` valid for `capacity` writes.
 */
enum SwStatus sw_result_column(const struct SwResult *result,
                               enum SwColumn column,
                               double *buffer,
                               size_t capacity);

/**
 * Looks up a named derived quantity of the run.
 *
 * # Safety
 * `result` must be a live handle, `name` a NUL-terminated string and `out`
 * valid for writes.
 */
enum SwStatus sw_result_quantity(const struct SwResult *result, const char *name, double *out);

/**
 * The result as CSV with its metadata header.
 *
 * # Safety
 * `result` must be a live handle and `out` valid for writes.
 */
enum SwStatus sw_result_to_csv(const struct SwResult *result, char **out);

/**
 * The result as a JSON document.
 *
 * # Safety
 * `result` must be a live handle and `out` valid for writes.
 */
enum SwStatus sw_result_to_json(const struct SwResult *result, char **out);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void sw_result_free(struct SwResult *result);

/**
 * Runs the self-validation suite. `out_passed` receives whether every check
 * passed; `out_report`, if not null, receives the JSON report. A failing
 * check is not an error: the call still returns `SW_STATUS_OK`.
 *
 * # Safety
 * `out_passed` must be valid for writes; `out_report` must be null or valid
 * for writes.
 */
enum SwStatus sw_validate(bool coarse, bool *out_passed, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLITWAVE_H */
