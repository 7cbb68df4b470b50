#ifndef RIS_PATHLOSS_H
#define RIS_PATHLOSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2-4 match the command line exit codes.
 */
typedef enum RisStatus {
  RIS_STATUS_OK = 0,
  RIS_STATUS_INVALID_ARGUMENT = 1,
  RIS_STATUS_CONFIG = 2,
  RIS_STATUS_RESOURCE_CAP = 3,
  RIS_STATUS_SELF_CHECK = 4,
  RIS_STATUS_GEOMETRY = 5,
  RIS_STATUS_MODEL_DOMAIN = 6,
  RIS_STATUS_DIVERGENCE = 7,
  RIS_STATUS_IO = 8,
  RIS_STATUS_NULL_POINTER = 9,
  RIS_STATUS_PANIC = 10,
} RisStatus;

typedef enum RisStrategy {
  RIS_STRATEGY_FOCUSING = 0,
  RIS_STRATEGY_BEAMFORMING = 1,
  RIS_STRATEGY_UNIFORM = 2,
} RisStrategy;

typedef enum RisSweepStrategy {
  RIS_SWEEP_STRATEGY_FOCUSING = 0,
  RIS_SWEEP_STRATEGY_BEAMFORMING = 1,
  RIS_SWEEP_STRATEGY_FAR = 2,
} RisSweepStrategy;

/**
 * Opaque scenario handle.
 */
typedef struct RisScenario RisScenario;

/**
 * Opaque sweep result handle.
 */
typedef struct RisSweepResult RisSweepResult;

typedef struct RisPathLoss {
  double inverse_loss;
  double loss_db;
  double received_power_w;
  /**
   * Gain over the free-space channel of length r_i + r_s, dB.
   */
  double normalized_db;
  double coherent_sum_re;
  double coherent_sum_im;
} RisPathLoss;

typedef struct RisSweepRow {
  double side_lambda;
  double psi_s_deg;
  double r_over_lambda;
  enum RisSweepStrategy strategy;
  uint64_t n;
  double loss_db;
  double normalized_db;
} RisSweepRow;

typedef struct RisRequiredSize {
  double area_m2;
  double side_m;
  double side_lambda;
} RisRequiredSize;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len` bytes) and returns the full message
 * length excluding the terminator. Pass a null `buf` to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t ris_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ris_version(void);

/**
 * Parses a TOML scenario document and stores a new handle in `out`.
 *
 * # Safety
 * `toml` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum RisStatus ris_scenario_from_toml(const char *toml, struct RisScenario **out);

/**
 * # Safety
 * `handle` must be null or a pointer from [`ris_scenario_from_toml`] not yet freed.
 */
void ris_scenario_free(struct RisScenario *handle);

/**
 * Number of RIS elements, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live scenario handle.
 */
uint64_t ris_scenario_element_count(const struct RisScenario *handle);

/**
 * Evaluates the scenario under one of the built-in strategies.
 *
 * # Safety
 * `handle` must be a live scenario handle and `out` a valid pointer.
 */
enum RisStatus ris_scenario_path_loss(const struct RisScenario *handle,
                                      enum RisStrategy strategy,
                                      struct RisPathLoss *out);

/**
 * Evaluates the scenario with caller-supplied coefficients given as
 * parallel arrays of real and imaginary parts in row-major element order.
 *
 * # Safety
 * `re` and `im` must each point to `len` readable doubles; `out` must be valid.
 */
enum RisStatus ris_scenario_path_loss_custom(const struct RisScenario *handle,
                                             const double *re,
                                             const double *im,
                                             size_t len,
                                             struct RisPathLoss *out);

/**
 * Parses and runs a TOML sweep document.
 *
 * # Safety
 * `toml` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum RisStatus ris_sweep_from_toml(const char *toml, struct RisSweepResult **out);

/**
 * # Safety
 * `handle` must be null or a live sweep handle.
 */
size_t ris_sweep_len(const struct RisSweepResult *handle);

/**
 * # Safety
 * `handle` must be a live sweep handle and `out` a valid pointer.
 */
enum RisStatus ris_sweep_row(const struct RisSweepResult *handle,
                             size_t index,
                             struct RisSweepRow *out);

/**
 * # Safety
 * `handle` must be null or a pointer from [`ris_sweep_from_toml`] not yet freed.
 */
void ris_sweep_free(struct RisSweepResult *handle);

/**
 * RIS size at which the far-case channel equals the equal-length
 * free-space channel.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RisStatus ris_required_area(double focal_length_m,
                                 double wavelength_m,
                                 double u_inc,
                                 double u_sca,
                                 double efficiency,
                                 double q,
                                 struct RisRequiredSize *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum RisStatus ris_free_space_loss(double path_length_m, double wavelength_m, double *out);

/**
 * Gain of the cos^2q element pattern along a direction with broadside
 * cosine `cos_psi`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RisStatus ris_element_gain(double q, double cos_psi, double *out);

double ris_benchmark_q(void);

double ris_far_path_loss_area(double area_m2,
                              double r_inc,
                              double r_sca,
                              double u_inc,
                              double u_sca,
                              double q,
                              double efficiency);

double ris_plate_path_loss(double area_m2, double r_inc, double r_sca);

double ris_plate_rcs(double area_m2, double wavelength_m);

double ris_effective_focal_length(double r_inc, double r_sca);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIS_PATHLOSS_H */
