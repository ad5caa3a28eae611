/*
 * uht — universal hypothesis testing for Markov-modeled symbol streams,
 * with sliding-window network flow anomaly detection on top.
 *
 * C API of the shared library. All functions return uht_status; outputs are
 * opaque handles released with the matching *_free call. On any non-OK
 * status, uht_last_error() yields a thread-local description.
 *
 * Conventions:
 *  - matrices are row-major doubles;
 *  - pair-symbol buffers and files use 1-based flat indices, where the pair
 *    (i, j) over an N-state alphabet sits at (i-1)*N + j;
 *  - every randomized routine is deterministic for a fixed seed.
 */
#ifndef UHT_H
#define UHT_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define UHT_API __attribute__((visibility("default")))
#else
#define UHT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uht_status {
  UHT_OK = 0,
  UHT_ERR_INVALID_ARGUMENT = 1, /* null pointers, domain violations */
  UHT_ERR_VALIDATION = 2,       /* non-stochastic matrix, bad law, bad config */
  UHT_ERR_SUPPORT = 3,          /* reference law lacks support where data has mass */
  UHT_ERR_CALIBRATION = 4,      /* non-convergence, non-stationarity */
  UHT_ERR_IO = 5,               /* file or format problem */
  UHT_ERR_INTERNAL = 6
} uht_status;

UHT_API const char *uht_status_name(uht_status status);
UHT_API const char *uht_last_error(void);
UHT_API const char *uht_version(void);

/* ------------------------------------------------------------------ */
/* Reference models: stationary pair law + covariance for one alphabet */

typedef struct uht_model uht_model;

typedef struct uht_calib_params {
  double epsilon; /* law floor; <= 0 selects 1e-8 */
  int32_t m0;     /* covariance series truncation; <= 0 selects 1000 */
  int64_t n0;     /* training-length hint; <= 0 selects 1000*N^2 */
} uht_calib_params;

/* Exact calibration from a known strictly positive N x N row-stochastic
 * matrix (row-major, n_states*n_states doubles). */
UHT_API uht_status uht_model_from_transition(const double *q, int32_t n_states,
                                             const uht_calib_params *params,
                                             uht_model **out);

/* Estimated calibration from a training sequence of 1-based pair symbols. */
UHT_API uht_status uht_model_estimate(const int32_t *pair_symbols, int64_t len,
                                      int32_t n_states,
                                      const uht_calib_params *params,
                                      uht_model **out);

UHT_API void uht_model_free(uht_model *model);

UHT_API int32_t uht_model_states(const uht_model *model);
/* out must hold N^2 doubles. */
UHT_API uht_status uht_model_law(const uht_model *model, double *out);
/* out must hold N*N doubles (row-major). */
UHT_API uht_status uht_model_transition(const uht_model *model, double *out);
/* out must hold N^2 * N^2 doubles (row-major). */
UHT_API uht_status uht_model_covariance(const uht_model *model, double *out);

UHT_API uht_status uht_model_save(const uht_model *model, const char *path);
UHT_API uht_status uht_model_load(const char *path, uht_model **out);

/* Divergence of the window's empirical law from the model law. */
UHT_API uht_status uht_model_divergence(const uht_model *model,
                                        const int32_t *pair_symbols, int64_t len,
                                        double *out);

/* Threshold calibrations for a window of n pairs at false-alarm target
 * beta. wc samples the Gaussian quadratic form, mc simulates chains from the
 * model's transition matrix; sanov is the closed form -log(beta)/n. */
UHT_API uht_status uht_model_threshold_wc(const uht_model *model, int64_t n,
                                          int64_t t_samples, double beta,
                                          uint64_t seed, double *out);
UHT_API uht_status uht_model_threshold_mc(const uht_model *model, int64_t n,
                                          int64_t t_samples, double beta,
                                          uint64_t seed, double *out);
UHT_API uht_status uht_threshold_sanov(double beta, int64_t n, double *out);

/* 1 if the divergence strictly exceeds the threshold. */
UHT_API int32_t uht_decide(double divergence, double threshold);

/* Simulate a chain of `len` pairs from a row-stochastic q (stationary
 * start); out must hold len int32 values, filled with 1-based symbols. */
UHT_API uht_status uht_sample_chain(const double *q, int32_t n_states, int64_t len,
                                    uint64_t seed, int32_t *out);

/* ------------------------------------------------------ */
/* Flow tables, quantizers, PL sets, detection, simulation */

typedef struct uht_flows uht_flows;
typedef struct uht_quantizer uht_quantizer;
typedef struct uht_pl_set uht_pl_set;
typedef struct uht_reports uht_reports;

UHT_API uht_status uht_flows_load_csv(const char *path, uht_flows **out);
UHT_API uht_status uht_flows_save_csv(const uht_flows *flows, const char *path);
UHT_API int64_t uht_flows_count(const uht_flows *flows);
UHT_API void uht_flows_free(uht_flows *flows);

/* Generate flows from a scenario config (JSON text, see README). */
UHT_API uht_status uht_simulate(const char *scenario_json, uht_flows **out);

UHT_API uht_status uht_quantizer_build(const uht_flows *training, int32_t n1, int32_t n2,
                                       int32_t n3, int32_t k, uint64_t seed,
                                       uht_quantizer **out);
UHT_API int32_t uht_quantizer_states(const uht_quantizer *quantizer);
UHT_API void uht_quantizer_free(uht_quantizer *quantizer);

/* Pair symbols (1-based) for consecutive flows; *out_len = count(flows)-1
 * (0 for fewer than 2 flows). Free *out with uht_buffer_free. */
UHT_API uht_status uht_quantize(const uht_quantizer *quantizer, const uht_flows *flows,
                                int32_t **out, int64_t *out_len);
UHT_API void uht_buffer_free(void *buffer);

/* One PL per segment of the reference traffic; segments_json is either NULL
 * (single PL over the whole stream) or a JSON array of [start, end) pairs,
 * e.g. "[[0, 2000], [2000, 4000]]". */
UHT_API uht_status uht_calibrate(const uht_flows *reference, const uht_quantizer *quantizer,
                                 const char *segments_json,
                                 const uht_calib_params *params, uht_pl_set **out);
UHT_API int32_t uht_pl_set_count(const uht_pl_set *set);
UHT_API const uht_model *uht_pl_set_model(const uht_pl_set *set, int32_t index);
UHT_API uht_status uht_pl_set_save(const uht_pl_set *set, const uht_quantizer *quantizer,
                                   const char *path);
/* out_quantizer may be NULL; when non-NULL and the file embeds a quantizer,
 * it receives a fresh handle. */
UHT_API uht_status uht_pl_set_load(const char *path, uht_pl_set **out,
                                   uht_quantizer **out_quantizer);
UHT_API void uht_pl_set_free(uht_pl_set *set);

/* detection_json fields (all optional): window_s, stride_s, beta, method
 * ("wc"|"sanov"|"fixed"), fixed_threshold, cdf_samples, seed. */
UHT_API uht_status uht_detect(const uht_flows *flows, const uht_quantizer *quantizer,
                              const uht_pl_set *pls, const char *detection_json,
                              uht_reports **out);

typedef struct uht_window_report {
  double window_start;
  double window_end;
  int64_t n_flows;
  int64_t n_pairs;
  double divergence;
  double threshold;
  int32_t best_pl;
  int32_t is_anomaly;
  int32_t insufficient; /* fewer than 2 flows; never an anomaly */
} uht_window_report;

UHT_API int64_t uht_reports_count(const uht_reports *reports);
UHT_API uht_status uht_reports_get(const uht_reports *reports, int64_t index,
                                   uht_window_report *out);
UHT_API int64_t uht_reports_anomalies(const uht_reports *reports);
/* Either path may be NULL to skip that output. */
UHT_API uht_status uht_reports_save(const uht_reports *reports, const char *jsonl_path,
                                    const char *csv_path);
UHT_API void uht_reports_free(uht_reports *reports);

/* ------------------------------------------------ */
/* Threshold-method comparison over a grid of n     */

typedef struct uht_curve uht_curve;

typedef struct uht_curve_point {
  int64_t n;
  double eta_sv;
  double eta_wc;
  double eta_mc;
  int32_t has_mc;
} uht_curve_point;

/* config_json fields: n_states, beta, t_samples, m0, epsilon, n0, n_grid
 * (array), seed, with_mc. */
UHT_API uht_status uht_threshold_compare(const char *config_json, uht_curve **out);
UHT_API int32_t uht_curve_count(const uht_curve *curve);
UHT_API uht_status uht_curve_point_at(const uht_curve *curve, int32_t index,
                                      uht_curve_point *out);
UHT_API uht_status uht_curve_save_csv(const uht_curve *curve, const char *path);
/* Human-readable relative-error summary; truncates to buf_len - 1. */
UHT_API uht_status uht_curve_summary(const uht_curve *curve, char *buf, size_t buf_len);
UHT_API void uht_curve_free(uht_curve *curve);

/* Pair-symbol CSV helpers (one 1-based index per line, "symbol" header). */
UHT_API uht_status uht_symbols_load_csv(const char *path, int32_t n_states,
                                        int32_t **out, int64_t *out_len);
UHT_API uht_status uht_symbols_save_csv(const int32_t *pair_symbols, int64_t len,
                                        int32_t n_states, const char *path);

/* Built-in invariant suite; returns the number of failed checks and prints
 * one line per failure (plus per-check lines when verbose) to stdout. */
UHT_API int32_t uht_selftest(int32_t verbose);

#ifdef __cplusplus
}
#endif

#endif /* UHT_H */
