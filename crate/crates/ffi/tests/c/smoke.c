#include <math.h>
#include <stdio.h>
#include <string.h>

#include "slitwave.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    double spacing = 0.0;
    CHECK(sw_energy_peak_spacing(96.0, &spacing) == SW_STATUS_OK);
    CHECK(fabs(spacing * 1e3 - 43.08) < 0.01);

    double v = 0.0;
    CHECK(sw_fringe_visibility(-0.5, &v) == SW_STATUS_INVALID_ARGUMENT);
    CHECK(sw_last_error_message() != NULL);

    SwScenario *scenario = NULL;
    CHECK(sw_scenario_builtin("fig1_shutter", &scenario) == SW_STATUS_OK);
    SwResult *result = NULL;
    CHECK(sw_scenario_run(scenario, &result) == SW_STATUS_OK);
    sw_scenario_free(scenario);

    size_t len = 0;
    CHECK(sw_result_len(result, &len) == SW_STATUS_OK);
    double x[1024], y[1024];
    CHECK(len <= 1024);
    CHECK(sw_result_column(result, SW_COLUMN_X, x, len) == SW_STATUS_OK);
    CHECK(sw_result_column(result, SW_COLUMN_ANALYTIC, y, len) == SW_STATUS_OK);
    double ratio = 0.0;
    CHECK(sw_result_quantity(result, "ratio_at_arrival", &ratio) == SW_STATUS_OK);
    CHECK(fabs(ratio - 0.25) < 1e-12);

    char *csv = NULL;
    CHECK(sw_result_to_csv(result, &csv) == SW_STATUS_OK);
    CHECK(strncmp(csv, "# tool: slitwave", 16) == 0);
    sw_string_free(csv);
    sw_result_free(result);

    printf("ok %s %zu rows\n", sw_version(), len);
    return 0;
}
