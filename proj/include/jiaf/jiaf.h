// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

/*
 * jiaf: joint instantaneous amplitude-frequency analysis of vibration signals.
 *
 * Plain C interface to the library. Objects are opaque handles created by
 * jiaf_*_create / _load / _from_* calls and released with the matching
 * jiaf_*_free (which accept NULL). Every fallible call returns a jiaf_status;
 * on failure a human-readable message is available from jiaf_last_error()
 * on the same thread until the next failing call.
 *
 * All functions are safe to call concurrently on distinct handles. Handles
 * themselves are read-only after creation, except for jiaf_report_text.
 */

#ifndef JIAF_JIAF_H
#define JIAF_JIAF_H

#include <stddef.h>
#include <stdint.h>

#if defined(JIAF_BUILDING_LIBRARY)
#define JIAF_API __attribute__((visibility("default")))
#else
#define JIAF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jiaf_status {
  JIAF_OK = 0,
  JIAF_ERR_INVALID_INPUT = 1,   /* non-finite samples, bad fs, bad arguments */
  JIAF_ERR_TOO_SHORT = 2,       /* fewer than 16 samples */
  JIAF_ERR_DEGENERATE = 3,      /* zero envelope, zero-sum IF, zero entropy... */
  JIAF_ERR_INGESTION = 4,       /* unreadable or malformed input files */
  JIAF_ERR_CONFIG = 5,          /* invalid options or inconsistent labels */
  JIAF_ERR_STRATIFICATION = 6,  /* a class too small to split */
  JIAF_ERR_EMPTY_DATASET = 7,   /* every segment was dropped */
  JIAF_ERR_IO = 8,              /* output could not be written */
  JIAF_ERR_MODEL_FORMAT = 9,    /* unreadable model file */
  JIAF_ERR_INTERNAL = 10
} jiaf_status;

typedef enum jiaf_method {
  JIAF_METHOD_PROPOSED = 0, /* instantaneous amplitude/frequency features */
  JIAF_METHOD_STFT = 1      /* STFT envelope-spectrum baseline */
} jiaf_method;

JIAF_API const char* jiaf_version(void);
JIAF_API const char* jiaf_status_name(jiaf_status status);
JIAF_API const char* jiaf_last_error(void);

/* ---- Features ----------------------------------------------------------- */

/* The six features, in serialization order. */
typedef struct jiaf_features {
  double ss;  /* spectral spread, Hz */
  double sc;  /* spectral centroid, Hz */
  double cov; /* coefficient of variation, percent */
  double cp;  /* correlation peak */
  int64_t pl; /* peak lag, samples */
  double mer; /* mean-to-entropy ratio */
} jiaf_features;

typedef struct jiaf_feature_options {
  /* 0: Shannon entropy -sum P log2 P. 1: -sum x log2 P. */
  int entropy_literal;
  /* 0: exact distinct values; otherwise equal-width bins. */
  size_t entropy_bins;
} jiaf_feature_options;

JIAF_API void jiaf_feature_options_default(jiaf_feature_options* options);

/* `options` may be NULL for the defaults. */
JIAF_API jiaf_status jiaf_extract_features(const double* samples, size_t n,
                                           double fs, jiaf_method method,
                                           const jiaf_feature_options* options,
                                           jiaf_features* out);

/* Fills caller-provided arrays of length n with the envelope, the unwrapped
 * phase (rad) and the instantaneous frequency (Hz). Any may be NULL. */
JIAF_API jiaf_status jiaf_instantaneous(const double* samples, size_t n,
                                        double fs, double* ia, double* ip,
                                        double* ifreq);

/* Writes instantaneous.csv, iafm.csv, iafc.csv, heatmap.csv and iefd.csv
 * into out_dir (created if missing). */
JIAF_API jiaf_status jiaf_write_plot_data(const double* samples, size_t n,
                                          double fs, const char* out_dir);

/* ---- Recordings ----------------------------------------------------------- */

typedef struct jiaf_signal jiaf_signal;

/* format: "csv-column", "raw-f64le" or "wav-pcm". */
JIAF_API jiaf_status jiaf_signal_load(const char* path, const char* format,
                                      double fs, jiaf_signal** out);
JIAF_API size_t jiaf_signal_length(const jiaf_signal* signal);
JIAF_API double jiaf_signal_fs(const jiaf_signal* signal);
JIAF_API const double* jiaf_signal_samples(const jiaf_signal* signal);
JIAF_API void jiaf_signal_free(jiaf_signal* signal);

/* ---- Synthetic benchmark ---------------------------------------------------- */

typedef enum jiaf_modulation {
  JIAF_MODULATION_IMPACT = 0,  /* decaying impact train */
  JIAF_MODULATION_SINUSOID = 1
} jiaf_modulation;

typedef struct jiaf_synth_config {
  double fs;
  size_t length;
  double carrier_hz;
  double f_ir;
  double f_or;
  double depth;
  double snr_db; /* INFINITY disables noise */
  jiaf_modulation shape;
  double decay_s;
} jiaf_synth_config;

JIAF_API void jiaf_synth_config_default(jiaf_synth_config* config);

/* One segment of fault class 1 (healthy), 2 (combined), 3 (inner race) or
 * 4 (outer race) into out, which must hold config->length samples. */
JIAF_API jiaf_status jiaf_synth_segment(const jiaf_synth_config* config,
                                        int fault_class, uint64_t seed,
                                        size_t index, double* out);

/* Writes per_class raw-f64le segments for each of the classes 1..4 into
 * out_dir, plus a manifest named manifest_name listing them. */
JIAF_API jiaf_status jiaf_synth_write(const jiaf_synth_config* config,
                                      size_t per_class, uint64_t seed,
                                      const char* out_dir,
                                      const char* manifest_name);

/* ---- Datasets ----------------------------------------------------------- */

typedef struct jiaf_dataset jiaf_dataset;

typedef struct jiaf_build_config {
  size_t segment_len;
  jiaf_method method;
  unsigned workers; /* 0 = all cores; never changes the output */
  jiaf_feature_options features;
} jiaf_build_config;

JIAF_API void jiaf_build_config_default(jiaf_build_config* config);

JIAF_API jiaf_status jiaf_dataset_from_manifest(const char* manifest_path,
                                                const jiaf_build_config* config,
                                                jiaf_dataset** out);
/* Every *.csv (csv-column), *.f64 / *.raw (raw-f64le) and *.wav file below
 * dir, in path order. Files in a subdirectory are labeled with its name. */
JIAF_API jiaf_status jiaf_dataset_from_directory(const char* dir, double fs,
                                                 const jiaf_build_config* config,
                                                 jiaf_dataset** out);
JIAF_API jiaf_status jiaf_dataset_read_csv(const char* path, jiaf_dataset** out);
JIAF_API jiaf_status jiaf_dataset_write_csv(const jiaf_dataset* dataset,
                                            const char* path);
/* Only datasets built from recordings carry diagnostics. */
JIAF_API jiaf_status jiaf_dataset_write_diagnostics(const jiaf_dataset* dataset,
                                                    const char* path);
JIAF_API size_t jiaf_dataset_rows(const jiaf_dataset* dataset);
JIAF_API size_t jiaf_dataset_segments(const jiaf_dataset* dataset);
JIAF_API size_t jiaf_dataset_dropped(const jiaf_dataset* dataset);
JIAF_API jiaf_method jiaf_dataset_method(const jiaf_dataset* dataset);
JIAF_API size_t jiaf_dataset_num_classes(const jiaf_dataset* dataset);
JIAF_API const char* jiaf_dataset_class_name(const jiaf_dataset* dataset,
                                             size_t index);
/* label receives the class index, or -1 for an unlabeled row. */
JIAF_API jiaf_status jiaf_dataset_row(const jiaf_dataset* dataset, size_t index,
                                      jiaf_features* features, long* label);
JIAF_API jiaf_status jiaf_dataset_split(const jiaf_dataset* dataset,
                                        double train_fraction, uint64_t seed,
                                        jiaf_dataset** train,
                                        jiaf_dataset** test);
JIAF_API void jiaf_dataset_free(jiaf_dataset* dataset);

/* ---- Random forest ----------------------------------------------------------- */

typedef struct jiaf_forest jiaf_forest;

typedef struct jiaf_forest_config {
  size_t n_trees;
  size_t max_depth; /* 0 = unlimited */
  size_t min_leaf;
  size_t features_per_split;
  uint64_t seed;
  unsigned workers; /* 0 = all cores; never changes the model */
} jiaf_forest_config;

JIAF_API void jiaf_forest_config_default(jiaf_forest_config* config);
JIAF_API jiaf_status jiaf_forest_train(const jiaf_dataset* train,
                                       const jiaf_forest_config* config,
                                       jiaf_forest** out);
JIAF_API jiaf_status jiaf_forest_save(const jiaf_forest* forest,
                                      const char* path);
JIAF_API jiaf_status jiaf_forest_load(const char* path, jiaf_forest** out);
JIAF_API size_t jiaf_forest_num_classes(const jiaf_forest* forest);
JIAF_API const char* jiaf_forest_class_name(const jiaf_forest* forest,
                                            size_t index);
/* probs must hold jiaf_forest_num_classes() entries. */
JIAF_API jiaf_status jiaf_forest_predict_proba(const jiaf_forest* forest,
                                               const jiaf_features* features,
                                               double* probs, size_t n_probs);
JIAF_API jiaf_status jiaf_forest_write_predictions(const jiaf_forest* forest,
                                                   const jiaf_dataset* rows,
                                                   const char* path);
JIAF_API void jiaf_forest_free(jiaf_forest* forest);

/* ---- Evaluation ---------------------------------------------------------- */

typedef struct jiaf_report jiaf_report;

typedef struct jiaf_report_context {
  size_t train_rows;
  double train_fraction;
  uint64_t split_seed;
} jiaf_report_context;

JIAF_API jiaf_status jiaf_evaluate(const jiaf_forest* forest,
                                   const jiaf_dataset* test,
                                   jiaf_report** out);
JIAF_API double jiaf_report_accuracy(const jiaf_report* report); /* percent */
JIAF_API double jiaf_report_roc_auc(const jiaf_report* report);
JIAF_API size_t jiaf_report_confusion(const jiaf_report* report,
                                      size_t true_class, size_t predicted);
/* Returned text stays valid until the next call on this report or its free. */
JIAF_API const char* jiaf_report_text(jiaf_report* report,
                                      const jiaf_report_context* context);
JIAF_API jiaf_status jiaf_report_write_confusion_csv(const jiaf_report* report,
                                                     const char* path);
JIAF_API void jiaf_report_free(jiaf_report* report);

/* ---- Benchmark ------------------------------------------------------------ */

typedef struct jiaf_bench_row {
  size_t n;
  double median_s;
  double p95_s;
} jiaf_bench_row;

JIAF_API jiaf_status jiaf_bench_extraction(size_t n, size_t runs,
                                           jiaf_method method, uint64_t seed,
                                           jiaf_bench_row* out);
/* Slope of log(time) against log(N log N). */
JIAF_API double jiaf_bench_scaling_exponent(const jiaf_bench_row* rows,
                                            size_t count);

#ifdef __cplusplus
}
#endif

#endif /* JIAF_JIAF_H */
