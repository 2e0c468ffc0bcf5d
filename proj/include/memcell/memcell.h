/*
 * memcell C API.
 *
 * Every entry point returns a memcell_status. On failure a thread-local
 * message describing the error is available from memcell_last_error()
 * until the next call on the same thread. Handles are opaque; each
 * *_create has a matching *_destroy, and destroying NULL is a no-op.
 * Units are SI throughout (volts, seconds, ohms, amperes).
 */
#ifndef MEMCELL_MEMCELL_H
#define MEMCELL_MEMCELL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MEMCELL_BUILDING_LIBRARY)
#    define MEMCELL_API __declspec(dllexport)
#  else
#    define MEMCELL_API __declspec(dllimport)
#  endif
#else
#  define MEMCELL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum memcell_status {
  MEMCELL_OK = 0,
  MEMCELL_ERR_INVALID_ARGUMENT = 1, /* NULL handle/pointer, bad key */
  MEMCELL_ERR_DOMAIN = 2,
  MEMCELL_ERR_RANGE = 3,
  MEMCELL_ERR_PARAMETER = 4,
  MEMCELL_ERR_MODEL = 5,
  MEMCELL_ERR_SINGULARITY = 6,
  MEMCELL_ERR_PROTOCOL = 7,
  MEMCELL_ERR_PRECONDITION = 8,
  MEMCELL_ERR_INPUT = 9,
  MEMCELL_ERR_CONFIG = 10,
  MEMCELL_ERR_IO = 11,
  MEMCELL_ERR_INTERNAL = 12
} memcell_status;

typedef enum memcell_mode {
  MEMCELL_MODE_IDLE = 0,
  MEMCELL_MODE_WRITE = 1,
  MEMCELL_MODE_READ = 2
} memcell_mode;

MEMCELL_API const char* memcell_version(void);
MEMCELL_API const char* memcell_status_string(memcell_status status);
MEMCELL_API const char* memcell_last_error(void);

/* ---- Device laws (default parameters) --------------------------------- */

/* Detector source voltage for gate voltage v_g. */
MEMCELL_API memcell_status memcell_pmos_source_voltage(double v_g, double* v_s);
MEMCELL_API memcell_status memcell_detect_mode(double v_s, memcell_mode* mode);
MEMCELL_API memcell_status memcell_emulator_memristance(double v_c, double* ohms);
MEMCELL_API memcell_status memcell_emulator_state_derivative(double v_c, double v_m, double* volts_per_second);

/* ---- Memory cell ------------------------------------------------------- */

typedef struct memcell_cell memcell_cell;

typedef struct memcell_read_result {
  int high;             /* 1 when the stored state reads above 2.5 V */
  double bit;           /* latched comparator output, volts */
  double sample_time;   /* seconds from the start of the read pulse */
  double state_before;
  double state_after;
  double peak_state;
  int restored;         /* 1 when the drift is within tolerance */
} memcell_read_result;

/* Default emulator, detector and comparator parameters. */
MEMCELL_API memcell_status memcell_cell_create(double initial_state, memcell_cell** out);
MEMCELL_API void memcell_cell_destroy(memcell_cell* cell);

MEMCELL_API memcell_status memcell_cell_state(const memcell_cell* cell, double* state);
MEMCELL_API memcell_status memcell_cell_set_state(memcell_cell* cell, double state);
MEMCELL_API memcell_status memcell_cell_last_bit(const memcell_cell* cell, double* bit);

/* Unipolar train of n pulses integrated at step dt. */
MEMCELL_API memcell_status memcell_cell_write(memcell_cell* cell, double amplitude, double t_on,
                                              double t_off, int n, double dt);
/* Zero-average read: +amplitude for half_period, then -amplitude. */
MEMCELL_API memcell_status memcell_cell_read(memcell_cell* cell, double amplitude, double half_period,
                                             double dt, memcell_read_result* result);

/* ---- Scenarios --------------------------------------------------------- */

typedef struct memcell_scenario memcell_scenario;

/* New scenario of the given kind: "hysteresis", "program", "readwrite",
 * "distortion" or "sweep". */
MEMCELL_API memcell_status memcell_scenario_create(const char* kind, memcell_scenario** out);
/* Loads a JSON config file; its keys replace the current ones. The file's
 * "scenario" key, if present, must match the handle's kind. */
MEMCELL_API memcell_status memcell_scenario_load_file(memcell_scenario* sc, const char* path);
MEMCELL_API memcell_status memcell_scenario_set_number(memcell_scenario* sc, const char* key, double value);
MEMCELL_API memcell_status memcell_scenario_set_string(memcell_scenario* sc, const char* key, const char* value);
MEMCELL_API memcell_status memcell_scenario_set_numbers(memcell_scenario* sc, const char* key,
                                                        const double* values, size_t count);
/* Validates the whole configuration without running anything. */
MEMCELL_API memcell_status memcell_scenario_validate(memcell_scenario* sc);
/* Runs the scenario, writing CSV traces and summary.json into out_dir
 * (NULL: the config's "out" key, else the current directory). *passed is
 * set to 1 when every check passes. */
MEMCELL_API memcell_status memcell_scenario_run(memcell_scenario* sc, const char* out_dir, int* passed);
/* Human-readable report and JSON summary of the last run; valid until the
 * next run or destroy. Empty strings before the first run. */
MEMCELL_API const char* memcell_scenario_report(const memcell_scenario* sc);
MEMCELL_API const char* memcell_scenario_summary_json(const memcell_scenario* sc);
MEMCELL_API void memcell_scenario_destroy(memcell_scenario* sc);

#ifdef __cplusplus
}
#endif

#endif /* MEMCELL_MEMCELL_H */
