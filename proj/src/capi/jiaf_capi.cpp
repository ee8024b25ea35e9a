// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "jiaf/jiaf.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <new>
#include <optional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/bench.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/forest.hpp"
#include "core/metrics.hpp"
#include "core/plot_export.hpp"
#include "core/recording_io.hpp"
#include "core/stft_baseline.hpp"
#include "core/synth.hpp"

struct jiaf_signal {
  jiaf::Signal signal;
};

struct jiaf_dataset {
  jiaf::LabeledDataset data;
  std::optional<jiaf::Diagnostics> diagnostics;
};

struct jiaf_forest {
  jiaf::RandomForest forest;
};

struct jiaf_report {
  jiaf::EvalReport report;
  jiaf::ForestConfig config;
  jiaf::Method method;
  std::string text;
};

namespace {

thread_local std::string last_error;

jiaf_status to_status(jiaf::ErrorKind kind) {
  using jiaf::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_input: return JIAF_ERR_INVALID_INPUT;
    case ErrorKind::too_short: return JIAF_ERR_TOO_SHORT;
    case ErrorKind::degenerate: return JIAF_ERR_DEGENERATE;
    case ErrorKind::ingestion: return JIAF_ERR_INGESTION;
    case ErrorKind::config: return JIAF_ERR_CONFIG;
    case ErrorKind::stratification: return JIAF_ERR_STRATIFICATION;
    case ErrorKind::empty_dataset: return JIAF_ERR_EMPTY_DATASET;
    case ErrorKind::io: return JIAF_ERR_IO;
    case ErrorKind::model_format: return JIAF_ERR_MODEL_FORMAT;
  }
  return JIAF_ERR_INTERNAL;
}

template <typename Fn>
jiaf_status guarded(Fn&& fn) {
  try {
    fn();
    return JIAF_OK;
  } catch (const jiaf::Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return JIAF_ERR_INTERNAL;
}

void require(bool condition, const char* what) {
  if (!condition) {
    throw jiaf::Error(jiaf::ErrorKind::invalid_input, what);
  }
}

jiaf::Signal make_signal(const double* samples, size_t n, double fs) {
  require(samples != nullptr || n == 0, "samples must not be NULL");
  return jiaf::Signal(std::vector<double>(samples, samples + n), fs);
}

jiaf::Method to_method(jiaf_method m) {
  if (m != JIAF_METHOD_PROPOSED && m != JIAF_METHOD_STFT) {
    throw jiaf::Error(jiaf::ErrorKind::config, "unknown method");
  }
  return m == JIAF_METHOD_STFT ? jiaf::Method::stft : jiaf::Method::proposed;
}

jiaf::FeatureOptions to_options(const jiaf_feature_options* options) {
  jiaf::FeatureOptions out;
  if (options != nullptr) {
    out.entropy = options->entropy_literal != 0 ? jiaf::EntropyForm::literal
                                                : jiaf::EntropyForm::shannon;
    out.entropy_bins = options->entropy_bins;
  }
  return out;
}

jiaf_features to_c(const jiaf::FeatureVector& f) {
  return jiaf_features{f.ss, f.sc, f.cov, f.cp, f.pl, f.mer};
}

jiaf::FeatureVector from_c(const jiaf_features& f) {
  return jiaf::FeatureVector{f.ss, f.sc, f.cov, f.cp, f.pl, f.mer};
}

jiaf::BuildOptions to_build(const jiaf_build_config* config) {
  jiaf_build_config defaults;
  jiaf_build_config_default(&defaults);
  const jiaf_build_config& c = config != nullptr ? *config : defaults;
  jiaf::BuildOptions options;
  options.segment_len = c.segment_len;
  options.method = to_method(c.method);
  options.workers = c.workers;
  options.features = to_options(&c.features);
  return options;
}

// Writes into a sibling temporary and renames, so a failed write never leaves
// a partial file at `path`.
template <typename Fn>
void write_atomically(const char* path, Fn&& fn) {
  require(path != nullptr, "path must not be NULL");
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw jiaf::Error(jiaf::ErrorKind::io, target.string() + ": cannot open for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
      throw jiaf::Error(jiaf::ErrorKind::io, target.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw jiaf::Error(jiaf::ErrorKind::io, target.string() + ": rename failed");
  }
}

}  // namespace

extern "C" {

const char* jiaf_version(void) { return "0.1.0"; }

const char* jiaf_status_name(jiaf_status status) {
  switch (status) {
    case JIAF_OK: return "ok";
    case JIAF_ERR_INVALID_INPUT: return "invalid-input";
    case JIAF_ERR_TOO_SHORT: return "too-short";
    case JIAF_ERR_DEGENERATE: return "degenerate";
    case JIAF_ERR_INGESTION: return "ingestion";
    case JIAF_ERR_CONFIG: return "config";
    case JIAF_ERR_STRATIFICATION: return "stratification";
    case JIAF_ERR_EMPTY_DATASET: return "empty-dataset";
    case JIAF_ERR_IO: return "io";
    case JIAF_ERR_MODEL_FORMAT: return "model-format";
    case JIAF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* jiaf_last_error(void) { return last_error.c_str(); }

// Features ---------------------------------------------------------------------

void jiaf_feature_options_default(jiaf_feature_options* options) {
  if (options != nullptr) {
    *options = jiaf_feature_options{0, 0};
  }
}

jiaf_status jiaf_extract_features(const double* samples, size_t n, double fs,
                                  jiaf_method method,
                                  const jiaf_feature_options* options,
                                  jiaf_features* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    const jiaf::Signal signal = make_signal(samples, n, fs);
    const auto opts = to_options(options);
    *out = to_c(to_method(method) == jiaf::Method::stft
                    ? jiaf::extract_stft_features(signal, opts)
                    : jiaf::extract_features(signal, opts));
  });
}

jiaf_status jiaf_instantaneous(const double* samples, size_t n, double fs,
                               double* ia, double* ip, double* ifreq) {
  return guarded([&] {
    const auto series = jiaf::analyze(make_signal(samples, n, fs));
    for (size_t i = 0; i < n; ++i) {
      if (ia) ia[i] = series.ia[i];
      if (ip) ip[i] = series.ip[i];
      if (ifreq) ifreq[i] = series.ifreq[i];
    }
  });
}

jiaf_status jiaf_write_plot_data(const double* samples, size_t n, double fs,
                                 const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir must not be NULL");
    jiaf::write_plot_data(make_signal(samples, n, fs), out_dir);
  });
}

// Recordings -------------------------------------------------------------------

jiaf_status jiaf_signal_load(const char* path, const char* format, double fs,
                             jiaf_signal** out) {
  return guarded([&] {
    require(path != nullptr && format != nullptr && out != nullptr,
            "path, format and out must not be NULL");
    *out = nullptr;
    auto signal =
        jiaf::load_recording(path, jiaf::parse_recording_format(format), fs);
    *out = new jiaf_signal{std::move(signal)};
  });
}

size_t jiaf_signal_length(const jiaf_signal* signal) {
  return signal != nullptr ? signal->signal.size() : 0;
}

double jiaf_signal_fs(const jiaf_signal* signal) {
  return signal != nullptr ? signal->signal.fs() : 0.0;
}

const double* jiaf_signal_samples(const jiaf_signal* signal) {
  return signal != nullptr ? signal->signal.samples().data() : nullptr;
}

void jiaf_signal_free(jiaf_signal* signal) { delete signal; }

// Synthetic benchmark ------------------------------------------------------------

void jiaf_synth_config_default(jiaf_synth_config* config) {
  if (config == nullptr) {
    return;
  }
  const jiaf::SynthRecipe r;
  *config = jiaf_synth_config{
      r.fs,     r.length, r.carrier_hz,
      r.f_ir,   r.f_or,   r.depth,
      r.snr_db, r.shape == jiaf::ModulationShape::sinusoid ? JIAF_MODULATION_SINUSOID
                                                           : JIAF_MODULATION_IMPACT,
      r.decay_s};
}

}  // extern "C"

namespace {

jiaf::SynthRecipe to_recipe(const jiaf_synth_config* config) {
  jiaf_synth_config c;
  jiaf_synth_config_default(&c);
  if (config != nullptr) {
    c = *config;
  }
  jiaf::SynthRecipe r;
  r.fs = c.fs;
  r.length = c.length;
  r.carrier_hz = c.carrier_hz;
  r.f_ir = c.f_ir;
  r.f_or = c.f_or;
  r.depth = c.depth;
  r.snr_db = c.snr_db;
  r.shape = c.shape == JIAF_MODULATION_SINUSOID ? jiaf::ModulationShape::sinusoid
                                                : jiaf::ModulationShape::impact;
  r.decay_s = c.decay_s;
  r.validate();
  return r;
}

}  // namespace

extern "C" {

jiaf_status jiaf_synth_segment(const jiaf_synth_config* config, int fault_class,
                               uint64_t seed, size_t index, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    if (fault_class < 1 || fault_class > 4) {
      throw jiaf::Error(jiaf::ErrorKind::config, "fault class must be 1..4");
    }
    const auto recipe = to_recipe(config);
    const auto segment =
        jiaf::synth_one(recipe, static_cast<jiaf::FaultClass>(fault_class), seed, index);
    const auto samples = segment.signal.samples();
    std::copy(samples.begin(), samples.end(), out);
  });
}

jiaf_status jiaf_synth_write(const jiaf_synth_config* config, size_t per_class,
                             uint64_t seed, const char* out_dir,
                             const char* manifest_name) {
  return guarded([&] {
    require(out_dir != nullptr && manifest_name != nullptr,
            "out_dir and manifest_name must not be NULL");
    jiaf::write_synthetic_recordings(to_recipe(config), per_class, seed, out_dir,
                                     manifest_name);
  });
}

// Datasets ---------------------------------------------------------------------

void jiaf_build_config_default(jiaf_build_config* config) {
  if (config != nullptr) {
    *config = jiaf_build_config{6400, JIAF_METHOD_PROPOSED, 0, {0, 0}};
  }
}

jiaf_status jiaf_dataset_from_manifest(const char* manifest_path,
                                       const jiaf_build_config* config,
                                       jiaf_dataset** out) {
  return guarded([&] {
    require(manifest_path != nullptr && out != nullptr,
            "manifest_path and out must not be NULL");
    *out = nullptr;
    const auto options = to_build(config);
    auto result = jiaf::build_dataset(jiaf::read_manifest(manifest_path), options);
    *out = new jiaf_dataset{std::move(result.dataset), std::move(result.diagnostics)};
  });
}

jiaf_status jiaf_dataset_from_directory(const char* dir, double fs,
                                        const jiaf_build_config* config,
                                        jiaf_dataset** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "dir and out must not be NULL");
    *out = nullptr;
    const auto options = to_build(config);
    auto result =
        jiaf::build_dataset(jiaf::manifest_from_directory(dir, fs), options);
    *out = new jiaf_dataset{std::move(result.dataset), std::move(result.diagnostics)};
  });
}

jiaf_status jiaf_dataset_read_csv(const char* path, jiaf_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be NULL");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw jiaf::Error(jiaf::ErrorKind::ingestion,
                        std::string(path) + ": cannot open feature CSV");
    }
    *out = new jiaf_dataset{jiaf::read_feature_csv(in), std::nullopt};
  });
}

jiaf_status jiaf_dataset_write_csv(const jiaf_dataset* dataset, const char* path) {
  return guarded([&] {
    require(dataset != nullptr, "dataset must not be NULL");
    write_atomically(path, [&](std::ostream& out) {
      jiaf::write_feature_csv(out, dataset->data);
    });
  });
}

jiaf_status jiaf_dataset_write_diagnostics(const jiaf_dataset* dataset,
                                           const char* path) {
  return guarded([&] {
    require(dataset != nullptr, "dataset must not be NULL");
    if (!dataset->diagnostics) {
      throw jiaf::Error(jiaf::ErrorKind::config,
                        "dataset was not built from recordings; no diagnostics");
    }
    write_atomically(path, [&](std::ostream& out) {
      jiaf::write_diagnostics(out, *dataset->diagnostics);
    });
  });
}

size_t jiaf_dataset_rows(const jiaf_dataset* dataset) {
  return dataset != nullptr ? dataset->data.size() : 0;
}

size_t jiaf_dataset_segments(const jiaf_dataset* dataset) {
  if (dataset == nullptr) {
    return 0;
  }
  return dataset->diagnostics ? dataset->diagnostics->segments : dataset->data.size();
}

size_t jiaf_dataset_dropped(const jiaf_dataset* dataset) {
  return dataset != nullptr && dataset->diagnostics
             ? dataset->diagnostics->dropped.size()
             : 0;
}

jiaf_method jiaf_dataset_method(const jiaf_dataset* dataset) {
  return dataset != nullptr && dataset->data.method == jiaf::Method::stft
             ? JIAF_METHOD_STFT
             : JIAF_METHOD_PROPOSED;
}

size_t jiaf_dataset_num_classes(const jiaf_dataset* dataset) {
  return dataset != nullptr ? dataset->data.class_names.size() : 0;
}

const char* jiaf_dataset_class_name(const jiaf_dataset* dataset, size_t index) {
  if (dataset == nullptr || index >= dataset->data.class_names.size()) {
    return nullptr;
  }
  return dataset->data.class_names[index].c_str();
}

jiaf_status jiaf_dataset_row(const jiaf_dataset* dataset, size_t index,
                             jiaf_features* features, long* label) {
  return guarded([&] {
    require(dataset != nullptr && index < dataset->data.size(),
            "row index out of range");
    const auto& row = dataset->data.rows[index];
    if (features) *features = to_c(row.features);
    if (label) *label = row.label ? static_cast<long>(*row.label) : -1;
  });
}

jiaf_status jiaf_dataset_split(const jiaf_dataset* dataset, double train_fraction,
                               uint64_t seed, jiaf_dataset** train,
                               jiaf_dataset** test) {
  return guarded([&] {
    require(dataset != nullptr && train != nullptr && test != nullptr,
            "dataset, train and test must not be NULL");
    *train = nullptr;
    *test = nullptr;
    auto [a, b] = jiaf::split(dataset->data, train_fraction, seed);
    auto train_set = std::make_unique<jiaf_dataset>(jiaf_dataset{std::move(a), std::nullopt});
    *test = new jiaf_dataset{std::move(b), std::nullopt};
    *train = train_set.release();
  });
}

void jiaf_dataset_free(jiaf_dataset* dataset) { delete dataset; }

// Forest -----------------------------------------------------------------------

void jiaf_forest_config_default(jiaf_forest_config* config) {
  if (config == nullptr) {
    return;
  }
  const jiaf::ForestConfig d;
  *config = jiaf_forest_config{d.n_trees, d.max_depth, d.min_leaf,
                               d.features_per_split, d.seed, d.workers};
}

jiaf_status jiaf_forest_train(const jiaf_dataset* train,
                              const jiaf_forest_config* config,
                              jiaf_forest** out) {
  return guarded([&] {
    require(train != nullptr && out != nullptr, "train and out must not be NULL");
    *out = nullptr;
    jiaf_forest_config c;
    jiaf_forest_config_default(&c);
    if (config != nullptr) {
      c = *config;
    }
    jiaf::ForestConfig fc;
    fc.n_trees = c.n_trees;
    fc.max_depth = c.max_depth;
    fc.min_leaf = c.min_leaf;
    fc.features_per_split = c.features_per_split;
    fc.seed = c.seed;
    fc.workers = c.workers;
    *out = new jiaf_forest{jiaf::RandomForest::train(train->data, fc)};
  });
}

jiaf_status jiaf_forest_save(const jiaf_forest* forest, const char* path) {
  return guarded([&] {
    require(forest != nullptr, "forest must not be NULL");
    write_atomically(path, [&](std::ostream& out) { forest->forest.save(out); });
  });
}

jiaf_status jiaf_forest_load(const char* path, jiaf_forest** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be NULL");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw jiaf::Error(jiaf::ErrorKind::ingestion,
                        std::string(path) + ": cannot open model");
    }
    *out = new jiaf_forest{jiaf::RandomForest::load(in)};
  });
}

size_t jiaf_forest_num_classes(const jiaf_forest* forest) {
  return forest != nullptr ? forest->forest.class_names().size() : 0;
}

const char* jiaf_forest_class_name(const jiaf_forest* forest, size_t index) {
  if (forest == nullptr || index >= forest->forest.class_names().size()) {
    return nullptr;
  }
  return forest->forest.class_names()[index].c_str();
}

jiaf_status jiaf_forest_predict_proba(const jiaf_forest* forest,
                                      const jiaf_features* features,
                                      double* probs, size_t n_probs) {
  return guarded([&] {
    require(forest != nullptr && features != nullptr && probs != nullptr,
            "forest, features and probs must not be NULL");
    require(n_probs == forest->forest.class_names().size(),
            "n_probs must equal the number of classes");
    const auto p = forest->forest.predict_proba(from_c(*features));
    std::copy(p.begin(), p.end(), probs);
  });
}

jiaf_status jiaf_forest_write_predictions(const jiaf_forest* forest,
                                          const jiaf_dataset* rows,
                                          const char* path) {
  return guarded([&] {
    require(forest != nullptr && rows != nullptr, "forest and rows must not be NULL");
    write_atomically(path, [&](std::ostream& out) {
      jiaf::write_predictions_csv(out, forest->forest, rows->data);
    });
  });
}

void jiaf_forest_free(jiaf_forest* forest) { delete forest; }

// Evaluation -------------------------------------------------------------------

jiaf_status jiaf_evaluate(const jiaf_forest* forest, const jiaf_dataset* test,
                          jiaf_report** out) {
  return guarded([&] {
    require(forest != nullptr && test != nullptr && out != nullptr,
            "forest, test and out must not be NULL");
    *out = nullptr;
    auto report = jiaf::evaluate(forest->forest, test->data);
    *out = new jiaf_report{std::move(report), forest->forest.config(),
                           test->data.method, {}};
  });
}

double jiaf_report_accuracy(const jiaf_report* report) {
  return report != nullptr ? report->report.accuracy : std::nan("");
}

double jiaf_report_roc_auc(const jiaf_report* report) {
  return report != nullptr ? report->report.roc_auc : std::nan("");
}

size_t jiaf_report_confusion(const jiaf_report* report, size_t true_class,
                             size_t predicted) {
  if (report == nullptr || true_class >= report->report.confusion.size() ||
      predicted >= report->report.confusion.size()) {
    return 0;
  }
  return report->report.confusion[true_class][predicted];
}

const char* jiaf_report_text(jiaf_report* report,
                             const jiaf_report_context* context) {
  if (report == nullptr) {
    return nullptr;
  }
  jiaf::ReportContext ctx;
  ctx.method = report->method;
  if (context != nullptr) {
    ctx.train_rows = context->train_rows;
    ctx.train_fraction = context->train_fraction;
    ctx.split_seed = context->split_seed;
  }
  std::ostringstream out;
  jiaf::write_report(out, report->report, report->config, ctx);
  report->text = out.str();
  return report->text.c_str();
}

jiaf_status jiaf_report_write_confusion_csv(const jiaf_report* report,
                                            const char* path) {
  return guarded([&] {
    require(report != nullptr, "report must not be NULL");
    write_atomically(path, [&](std::ostream& out) {
      jiaf::write_confusion_csv(out, report->report);
    });
  });
}

void jiaf_report_free(jiaf_report* report) { delete report; }

// Benchmark --------------------------------------------------------------------

jiaf_status jiaf_bench_extraction(size_t n, size_t runs, jiaf_method method,
                                  uint64_t seed, jiaf_bench_row* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    const auto row = jiaf::bench_extraction(n, runs, to_method(method), seed);
    *out = jiaf_bench_row{row.n, row.median_s, row.p95_s};
  });
}

double jiaf_bench_scaling_exponent(const jiaf_bench_row* rows, size_t count) {
  if (rows == nullptr || count < 2) {
    return std::nan("");
  }
  std::vector<jiaf::BenchRow> converted;
  for (size_t i = 0; i < count; ++i) {
    converted.push_back({rows[i].n, rows[i].median_s, rows[i].p95_s});
  }
  return jiaf::scaling_exponent(converted);
}

}  // extern "C"
