#ifndef V2XSIM_H
#define V2XSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(V2XSIM_BUILDING_LIBRARY)
#define V2X_API __attribute__((visibility("default")))
#else
#define V2X_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum v2x_status {
  V2X_OK = 0,
  V2X_ERR_ARGUMENT = 1, /* null handle, index out of range, buffer too small */
  V2X_ERR_CONFIG = 2,
  V2X_ERR_DOMAIN = 3,
  V2X_ERR_IO = 4,
  V2X_ERR_INTERNAL = 5
} v2x_status;

typedef struct v2x_config v2x_config;
typedef struct v2x_results v2x_results;

/* Message for the last failing call on this thread; never null. */
V2X_API const char* v2x_last_error(void);
V2X_API const char* v2x_version(void);
V2X_API const char* v2x_status_name(v2x_status status);

V2X_API v2x_status v2x_config_parse(const char* text, v2x_config** out);
V2X_API v2x_status v2x_config_load(const char* path, v2x_config** out);
V2X_API void v2x_config_free(v2x_config* cfg);
V2X_API v2x_status v2x_config_set_seed(v2x_config* cfg, uint64_t seed);
V2X_API v2x_status v2x_config_set_subframes(v2x_config* cfg, int n_subframes);
V2X_API const char* v2x_config_label(const v2x_config* cfg);

typedef void (*v2x_progress_fn)(size_t done, size_t total, void* user);

V2X_API v2x_status v2x_results_create(v2x_results** out);
V2X_API void v2x_results_free(v2x_results* res);

/* Runs one BLER curve and appends it to `res`. workers < 1 means 1. */
V2X_API v2x_status v2x_run(const v2x_config* cfg, int workers, v2x_progress_fn progress,
                           void* user, v2x_results* res);

typedef struct v2x_point {
  double snr_db;
  int64_t blocks;
  int64_t control_errors;
  int64_t data_errors;
  double control_bler;
  double data_bler;
} v2x_point;

V2X_API size_t v2x_results_curve_count(const v2x_results* res);
V2X_API const char* v2x_results_label(const v2x_results* res, size_t curve);
V2X_API size_t v2x_results_point_count(const v2x_results* res, size_t curve);
V2X_API v2x_status v2x_results_point(const v2x_results* res, size_t curve, size_t index,
                                     v2x_point* out);

/* Copies the CSV text into buf (NUL-terminated). *needed receives the size
   including the terminator; buf may be null to query it. */
V2X_API v2x_status v2x_results_csv(const v2x_results* res, char* buf, size_t cap, size_t* needed);
/* svg_path may be null. */
V2X_API v2x_status v2x_results_write(const v2x_results* res, const char* csv_path,
                                     const char* svg_path);

typedef struct v2x_geometry {
  int lte;
  int mu;
  int extended_cp;
  double bandwidth_hz;
  int scs_khz;
  int prb_khz;
  int subframes_per_frame;
  int slots_per_subframe;
  double slot_duration_ms;
  int symbols_per_slot;
  int fr1;
  int fr2;
  int n_prb;
  int n_subcarriers;
  int fft_size;
  double sample_rate_hz;
  int64_t cp_long_tc;
  int64_t cp_short_tc;
  int cp_long_samples;
  int cp_short_samples;
  double cp_long_us;
  double cp_short_us;
  int64_t subframe_tc;
  int subframe_samples;
} v2x_geometry;

V2X_API v2x_status v2x_geometry_query(int lte, int mu, int extended_cp, double bandwidth_hz,
                                      v2x_geometry* out);

/* Encodes, transmits and demodulates one subframe of `cfg` without channel
   or noise; writes the transmitted resource grid and time waveform dumps. */
V2X_API v2x_status v2x_dump_subframe(const v2x_config* cfg, const char* grid_path,
                                     const char* waveform_path);

#ifdef __cplusplus
}
#endif

#endif
