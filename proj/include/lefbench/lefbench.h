#ifndef LEFBENCH_H
#define LEFBENCH_H

/* C interface of the workbench. Handles are opaque; every call that can fail
 * returns a status and leaves a message for lefbench_last_error(). */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LEFBENCH_BUILDING_LIBRARY)
#define LEFBENCH_API __attribute__((visibility("default")))
#else
#define LEFBENCH_API
#endif

typedef enum lefbench_status {
  LEFBENCH_OK = 0,
  LEFBENCH_INVALID_INPUT,
  LEFBENCH_NON_EMBEDDABLE_INPUT,
  LEFBENCH_DEGENERATE_TANGENCY,
  LEFBENCH_SHARED_BOUNDARY_ENDPOINT,
  LEFBENCH_SPIRAL_COLLISION,
  LEFBENCH_MISSING_CLASS,
  LEFBENCH_UNRESOLVED_SIGN,
  LEFBENCH_UNKNOWN_PAIR,
  LEFBENCH_INVALID_WITNESS,
  LEFBENCH_MISSING_PARITY,
  LEFBENCH_IMAGE_TOO_LARGE,
  LEFBENCH_UNDECIDABLE,
  LEFBENCH_INCONSISTENT,
  LEFBENCH_INCOMPLETE_BASIS,
  LEFBENCH_MISSING_FATE,
  LEFBENCH_CONFIG_ERROR,
  LEFBENCH_INTERNAL
} lefbench_status;

typedef struct lefbench_scenario lefbench_scenario;

LEFBENCH_API const char* lefbench_version(void);

/* Message of the last failed call on this thread, "" if none. */
LEFBENCH_API const char* lefbench_last_error(void);

/* Process exit code for a status: 0, 1 (validation/config), 2 (undecidable or
 * unknown pair), 3 (internal inconsistency). */
LEFBENCH_API int lefbench_exit_code(lefbench_status status);

/* resolution <= 0 keeps the resolutions written in the config. */
LEFBENCH_API lefbench_status lefbench_scenario_load(const char* path, int resolution, lefbench_scenario** out);
LEFBENCH_API lefbench_status lefbench_scenario_parse(const char* text, const char* origin, int resolution,
                                                     lefbench_scenario** out);
LEFBENCH_API void lefbench_scenario_free(lefbench_scenario* scenario);

/* Runs validate, homology, floer-ranks, hw, render or all. The report is
 * written even when the pipeline stops on an error; exit_code then tells why.
 * svg_dir may be NULL. Free the report with lefbench_string_free. */
LEFBENCH_API lefbench_status lefbench_run(const lefbench_scenario* scenario, const char* command, const char* svg_dir,
                                          char** report, int* exit_code);

/* Canonical text of the parsed config. */
LEFBENCH_API lefbench_status lefbench_scenario_emit(const lefbench_scenario* scenario, char** text);

LEFBENCH_API void lefbench_string_free(char* s);

/* rank of the third term of an exact triangle whose first map has image rank f. */
LEFBENCH_API lefbench_status lefbench_triangle_rank(long k, long l, long f, unsigned long* out);

/* 1 if the unit dies, 0 if it survives. */
LEFBENCH_API lefbench_status lefbench_unit_fate(long rank_total, long rank_quotient, int* dies);

#ifdef __cplusplus
}
#endif

#endif
