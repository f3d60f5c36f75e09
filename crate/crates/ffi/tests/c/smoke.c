#include <math.h>
#include <stdio.h>
#include <string.h>

#include "dirorbit.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    double lo, hi, x;
    char hex[17];

    CHECK(dirorbit_dir_op(DIRORBIT_OP_ADD, 0.1, 0.2, DIRORBIT_ROUNDING_TOWARD_NEG_INF, &lo) == DIRORBIT_STATUS_OK);
    CHECK(dirorbit_dir_op(DIRORBIT_OP_ADD, 0.1, 0.2, DIRORBIT_ROUNDING_TOWARD_POS_INF, &hi) == DIRORBIT_STATUS_OK);
    CHECK(dirorbit_next_up(lo) == hi);
    CHECK(dirorbit_dir_op(DIRORBIT_OP_DIV, 1.0, 0.0, DIRORBIT_ROUNDING_NEAREST, &x) == DIRORBIT_STATUS_DIV_BY_ZERO);
    CHECK(strcmp(dirorbit_status_name(DIRORBIT_STATUS_DIV_BY_ZERO), "div_by_zero") == 0);

    DirorbitMap *map = NULL;
    CHECK(dirorbit_map_new_logistic("3.9", DIRORBIT_PARAM_ROUNDING_STORED, &map) == DIRORBIT_STATUS_OK);
    DirorbitOrbit *orbit = NULL;
    CHECK(dirorbit_orbit_run(map, DIRORBIT_START_RECIPROCAL, "3.9", DIRORBIT_SCHEME_LEMMA1, 9, &orbit) == DIRORBIT_STATUS_OK);
    CHECK(dirorbit_orbit_len(orbit) == 10);
    CHECK(dirorbit_orbit_value(orbit, 9, &x) == DIRORBIT_STATUS_OK);
    CHECK(dirorbit_to_hex(x, hex, sizeof hex) == DIRORBIT_STATUS_OK);
    CHECK(strcmp(hex, "3fe7cb7cb7cb7cb8") == 0);

    DirorbitSeries *series = NULL;
    CHECK(dirorbit_error_series(orbit, 0, &series) == DIRORBIT_STATUS_OK);
    CHECK(dirorbit_series_log10(series, 1, &x) == DIRORBIT_STATUS_OK);
    CHECK(x < -16.0 && x > -17.0);

    CHECK(dirorbit_orbit_value(orbit, 10, &x) == DIRORBIT_STATUS_OUT_OF_RANGE);
    CHECK(strlen(dirorbit_last_error_message()) > 0);

    dirorbit_series_free(series);
    dirorbit_orbit_free(orbit);
    dirorbit_map_free(map);
    puts("ok");
    return 0;
}
