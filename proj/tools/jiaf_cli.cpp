// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

// jiaf command-line tool. Talks to the library only through jiaf/jiaf.h.

#include <jiaf/jiaf.h>

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "alloc_tracker.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitIngestion = 3,
  kExitDegenerate = 4,
};

int exit_code_for(jiaf_status status) {
  switch (status) {
    case JIAF_OK:
      return kExitOk;
    case JIAF_ERR_CONFIG:
    case JIAF_ERR_STRATIFICATION:
      return kExitConfig;
    case JIAF_ERR_INGESTION:
    case JIAF_ERR_IO:
    case JIAF_ERR_MODEL_FORMAT:
      return kExitIngestion;
    case JIAF_ERR_INVALID_INPUT:
    case JIAF_ERR_TOO_SHORT:
    case JIAF_ERR_DEGENERATE:
    case JIAF_ERR_EMPTY_DATASET:
      return kExitDegenerate;
    case JIAF_ERR_INTERNAL:
      break;
  }
  return kExitOther;
}

struct Failure : std::runtime_error {
  Failure(jiaf_status s, const std::string& message)
      : std::runtime_error(message), status(s) {}
  jiaf_status status;
};

void check(jiaf_status status) {
  if (status != JIAF_OK) {
    throw Failure(status, jiaf_last_error());
  }
}

[[noreturn]] void config_error(const std::string& message) {
  throw Failure(JIAF_ERR_CONFIG, message);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset = std::unique_ptr<jiaf_dataset, Deleter<jiaf_dataset, jiaf_dataset_free>>;
using Forest = std::unique_ptr<jiaf_forest, Deleter<jiaf_forest, jiaf_forest_free>>;
using Report = std::unique_ptr<jiaf_report, Deleter<jiaf_report, jiaf_report_free>>;
using Signal = std::unique_ptr<jiaf_signal, Deleter<jiaf_signal, jiaf_signal_free>>;

jiaf_method parse_method(const std::string& name) {
  if (name == "proposed") return JIAF_METHOD_PROPOSED;
  if (name == "stft") return JIAF_METHOD_STFT;
  config_error("unknown method '" + name + "' (expected proposed or stft)");
}

// Environment overrides apply when the flag is absent.
std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* text = std::getenv(name);
  if (text == nullptr || *text == '\0') {
    return fallback;
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text, &end, 10);
  if (errno != 0 || *end != '\0' || *text == '-') {
    config_error(std::string(name) + " must be a non-negative integer");
  }
  return value;
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
  }
}

struct Common {
  std::uint64_t seed = 42;
  unsigned workers = 0;
};

// extract ------------------------------------------------------------------------

struct ExtractArgs {
  std::string manifest;
  std::string input_dir;
  std::string out;
  std::string diagnostics;
  std::string method = "proposed";
  std::size_t segment_len = 6400;
  double fs = 64000.0;
  std::string entropy = "shannon";
  std::size_t entropy_bins = 0;
};

jiaf_build_config build_config(const ExtractArgs& a, const Common& c) {
  jiaf_build_config config;
  jiaf_build_config_default(&config);
  config.segment_len = a.segment_len;
  config.method = parse_method(a.method);
  config.workers = c.workers;
  if (a.entropy != "shannon" && a.entropy != "literal") {
    config_error("--entropy must be shannon or literal");
  }
  config.features.entropy_literal = a.entropy == "literal" ? 1 : 0;
  config.features.entropy_bins = a.entropy_bins;
  return config;
}

int run_extract(const ExtractArgs& a, const Common& c) {
  const jiaf_build_config config = build_config(a, c);
  jiaf_dataset* raw = nullptr;
  if (!a.manifest.empty()) {
    check(jiaf_dataset_from_manifest(a.manifest.c_str(), &config, &raw));
  } else {
    check(jiaf_dataset_from_directory(a.input_dir.c_str(), a.fs, &config, &raw));
  }
  Dataset dataset(raw);

  const std::string diagnostics =
      a.diagnostics.empty() ? a.out + ".diagnostics.txt" : a.diagnostics;
  ensure_parent(a.out);
  ensure_parent(diagnostics);
  check(jiaf_dataset_write_csv(dataset.get(), a.out.c_str()));
  check(jiaf_dataset_write_diagnostics(dataset.get(), diagnostics.c_str()));

  const std::size_t dropped = jiaf_dataset_dropped(dataset.get());
  std::printf("%zu rows from %zu segments written to %s\n",
              jiaf_dataset_rows(dataset.get()), jiaf_dataset_segments(dataset.get()),
              a.out.c_str());
  if (dropped > 0) {
    std::fprintf(stderr, "jiaf: warning: %zu segment(s) dropped; see %s\n", dropped,
                 diagnostics.c_str());
  }
  return kExitOk;
}

// train-eval / predict -------------------------------------------------------------

struct TrainArgs {
  std::string features;
  std::string out_dir;
  double split = 0.7;
  jiaf_forest_config forest{};
};

int run_train_eval(const TrainArgs& a, const Common& c) {
  jiaf_dataset* raw = nullptr;
  check(jiaf_dataset_read_csv(a.features.c_str(), &raw));
  Dataset all(raw);

  jiaf_dataset* train_raw = nullptr;
  jiaf_dataset* test_raw = nullptr;
  check(jiaf_dataset_split(all.get(), a.split, c.seed, &train_raw, &test_raw));
  Dataset train(train_raw);
  Dataset test(test_raw);

  jiaf_forest_config config = a.forest;
  config.seed = c.seed;
  config.workers = c.workers;
  jiaf_forest* forest_raw = nullptr;
  check(jiaf_forest_train(train.get(), &config, &forest_raw));
  Forest forest(forest_raw);

  jiaf_report* report_raw = nullptr;
  check(jiaf_evaluate(forest.get(), test.get(), &report_raw));
  Report report(report_raw);

  const jiaf_report_context context{jiaf_dataset_rows(train.get()), a.split, c.seed};
  const std::string text = jiaf_report_text(report.get(), &context);

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  const fs::path dir(a.out_dir);
  check(jiaf_forest_save(forest.get(), (dir / "model.txt").c_str()));
  check(jiaf_forest_write_predictions(forest.get(), test.get(),
                                      (dir / "predictions.csv").c_str()));
  check(jiaf_report_write_confusion_csv(report.get(), (dir / "confusion.csv").c_str()));
  {
    const fs::path path = dir / "report.txt";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      throw Failure(JIAF_ERR_IO, path.string() + ": write failed");
    }
  }
  std::fputs(text.c_str(), stdout);
  return kExitOk;
}

struct PredictArgs {
  std::string model;
  std::string features;
  std::string out;
};

int run_predict(const PredictArgs& a) {
  jiaf_forest* forest_raw = nullptr;
  check(jiaf_forest_load(a.model.c_str(), &forest_raw));
  Forest forest(forest_raw);
  jiaf_dataset* raw = nullptr;
  check(jiaf_dataset_read_csv(a.features.c_str(), &raw));
  Dataset rows(raw);
  ensure_parent(a.out);
  check(jiaf_forest_write_predictions(forest.get(), rows.get(), a.out.c_str()));
  std::printf("%zu predictions written to %s\n", jiaf_dataset_rows(rows.get()),
              a.out.c_str());
  return kExitOk;
}

// bench ----------------------------------------------------------------------------

struct BenchArgs {
  std::size_t runs = 20;
  std::string method = "proposed";
  std::string out;
};

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        return line.substr(line.find_first_not_of(' ', colon + 1));
      }
    }
  }
  return "unknown";
}

// High-water mark of heap bytes allocated during one extraction, after a
// warm-up call has populated any lazily built FFT plans.
std::size_t extraction_peak_bytes(jiaf_method method, std::uint64_t seed) {
  jiaf_synth_config synth;
  jiaf_synth_config_default(&synth);
  std::vector<double> samples(synth.length);
  check(jiaf_synth_segment(&synth, 2, seed, 0, samples.data()));
  jiaf_features features;
  check(jiaf_extract_features(samples.data(), samples.size(), synth.fs, method, nullptr,
                              &features));
  jiaf_cli::reset_peak();
  const std::size_t before = jiaf_cli::live_bytes();
  check(jiaf_extract_features(samples.data(), samples.size(), synth.fs, method, nullptr,
                              &features));
  return jiaf_cli::peak_bytes() - before;
}

int run_bench(const BenchArgs& a, const Common& c) {
  if (a.runs == 0) {
    config_error("--runs must be positive");
  }
  const jiaf_method method = parse_method(a.method);
  const std::size_t sizes[] = {1600, 3200, 6400, 12800, 25600};
  std::vector<jiaf_bench_row> rows;
  for (std::size_t n : sizes) {
    jiaf_bench_row row;
    check(jiaf_bench_extraction(n, a.runs, method, c.seed, &row));
    rows.push_back(row);
  }

  std::string csv = "N,median_s,p95_s\n";
  char buffer[128];
  for (const auto& row : rows) {
    std::snprintf(buffer, sizeof buffer, "%zu,%.9f,%.9f\n", row.n, row.median_s,
                  row.p95_s);
    csv += buffer;
  }

  const double exponent = jiaf_bench_scaling_exponent(rows.data(), rows.size());
  const double ratio = rows[3].median_s / rows[2].median_s;
  const std::size_t peak = extraction_peak_bytes(method, c.seed);

  std::FILE* summary = stdout;
  if (a.out.empty()) {
    std::fputs(csv.c_str(), stdout);
    summary = stderr;
  } else {
    ensure_parent(a.out);
    std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
    out << csv;
    if (!out) {
      throw Failure(JIAF_ERR_IO, a.out + ": write failed");
    }
  }
  std::fprintf(summary, "method: %s\n", a.method.c_str());
  std::fprintf(summary, "runs per size: %zu\n", a.runs);
  std::fprintf(summary, "machine: %s, %u hardware threads\n", cpu_model().c_str(),
               std::thread::hardware_concurrency());
  std::fprintf(summary, "median at N=6400: %.6f s\n", rows[2].median_s);
  std::fprintf(summary, "time(12800)/time(6400): %.3f\n", ratio);
  std::fprintf(summary, "scaling exponent vs N log N: %.3f\n", exponent);
  std::fprintf(summary, "peak heap during one 6400-sample extraction: %zu bytes (%.3f MB)\n",
               peak, static_cast<double>(peak) / 1.0e6);
  return kExitOk;
}

// synth ----------------------------------------------------------------------------

struct SynthArgs {
  std::size_t per_class = 200;
  std::string out_dir;
  std::string manifest_name = "manifest.json";
  std::string shape = "impact";
  jiaf_synth_config recipe{};
};

int run_synth(SynthArgs a, const Common& c) {
  if (a.shape == "impact") {
    a.recipe.shape = JIAF_MODULATION_IMPACT;
  } else if (a.shape == "sinusoid") {
    a.recipe.shape = JIAF_MODULATION_SINUSOID;
  } else {
    config_error("--shape must be impact or sinusoid");
  }
  check(jiaf_synth_write(&a.recipe, a.per_class, c.seed, a.out_dir.c_str(),
                         a.manifest_name.c_str()));
  std::printf("%zu recordings and %s written to %s\n", 4 * a.per_class,
              a.manifest_name.c_str(), a.out_dir.c_str());
  return kExitOk;
}

// plot-data ------------------------------------------------------------------------

struct PlotArgs {
  std::string input;
  std::string format = "raw-f64le";
  double fs = 64000.0;
  std::size_t segment = 0;
  std::size_t segment_len = 6400;
  std::string out_dir;
};

int run_plot_data(const PlotArgs& a) {
  jiaf_signal* raw = nullptr;
  check(jiaf_signal_load(a.input.c_str(), a.format.c_str(), a.fs, &raw));
  Signal signal(raw);
  const std::size_t total = jiaf_signal_length(signal.get());
  const std::size_t len = a.segment_len == 0 ? total : a.segment_len;
  if (len > total || a.segment >= total / len) {
    config_error("segment " + std::to_string(a.segment) + " of length " +
                 std::to_string(len) + " is beyond the recording (" +
                 std::to_string(total) + " samples)");
  }
  const double* samples = jiaf_signal_samples(signal.get()) + a.segment * len;
  check(jiaf_write_plot_data(samples, len, jiaf_signal_fs(signal.get()),
                             a.out_dir.c_str()));
  std::printf("plot data for %zu samples written to %s\n", len, a.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint instantaneous amplitude-frequency analysis of vibration signals"};
  app.set_version_flag("--version", std::string("jiaf ") + jiaf_version());
  app.require_subcommand(1);

  Common common;
  std::uint64_t seed_flag = 0;
  unsigned workers_flag = 0;
  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--workers", workers_flag,
                    "Worker threads, 0 = all cores (env JIAF_WORKERS)");
    if (with_seed) {
      sub->add_option("--seed", seed_flag, "Random seed (env JIAF_SEED, default 42)");
    }
  };

  ExtractArgs extract;
  auto* cmd_extract = app.add_subcommand("extract", "Segment recordings and write the feature CSV");
  auto* src = cmd_extract->add_option_group("source");
  src->add_option("--manifest", extract.manifest, "JSON manifest of recordings")
;
  src->add_option("--input-dir", extract.input_dir,
                  "Directory of recordings, labeled by subdirectory name")
;
  src->require_option(1);
  cmd_extract->add_option("--out", extract.out, "Feature CSV")->required();
  cmd_extract->add_option("--diagnostics", extract.diagnostics,
                          "Diagnostics report (default <out>.diagnostics.txt)");
  cmd_extract->add_option("--method", extract.method, "proposed or stft")
      ->capture_default_str();
  cmd_extract->add_option("--segment-len", extract.segment_len, "Samples per segment")
      ->capture_default_str();
  cmd_extract->add_option("--fs", extract.fs, "Sample rate for --input-dir, Hz")
      ->capture_default_str();
  cmd_extract->add_option("--entropy", extract.entropy, "shannon or literal")
      ->capture_default_str();
  cmd_extract->add_option("--entropy-bins", extract.entropy_bins,
                          "Equal-width bins for the entropy, 0 = distinct values")
      ->capture_default_str();
  add_common(cmd_extract, false);

  TrainArgs train;
  jiaf_forest_config_default(&train.forest);
  auto* cmd_train = app.add_subcommand(
      "train-eval", "Split a feature CSV, train the forest and evaluate it");
  cmd_train->add_option("--features", train.features, "Feature CSV")
      ->required()
;
  cmd_train->add_option("--out-dir", train.out_dir,
                        "Receives model.txt, report.txt, confusion.csv, predictions.csv")
      ->required();
  cmd_train->add_option("--split", train.split, "Training fraction")->capture_default_str();
  cmd_train->add_option("--trees", train.forest.n_trees)->capture_default_str();
  cmd_train->add_option("--max-depth", train.forest.max_depth, "0 = unlimited")
      ->capture_default_str();
  cmd_train->add_option("--min-leaf", train.forest.min_leaf)->capture_default_str();
  cmd_train->add_option("--features-per-split", train.forest.features_per_split)
      ->capture_default_str();
  add_common(cmd_train, true);

  PredictArgs predict;
  auto* cmd_predict = app.add_subcommand("predict", "Apply a saved model to a feature CSV");
  cmd_predict->add_option("--model", predict.model)->required();
  cmd_predict->add_option("--features", predict.features)
      ->required()
;
  cmd_predict->add_option("--out", predict.out, "Predictions CSV")->required();

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Time feature extraction across segment lengths");
  cmd_bench->add_option("--runs", bench.runs, "Timed runs per length")->capture_default_str();
  cmd_bench->add_option("--method", bench.method, "proposed or stft")->capture_default_str();
  cmd_bench->add_option("--out", bench.out, "CSV destination (default stdout)");
  add_common(cmd_bench, true);

  SynthArgs synth;
  jiaf_synth_config_default(&synth.recipe);
  auto* cmd_synth = app.add_subcommand("synth", "Write the synthetic four-class benchmark");
  cmd_synth->add_option("--per-class", synth.per_class)->capture_default_str();
  cmd_synth->add_option("--out-dir", synth.out_dir)->required();
  cmd_synth->add_option("--manifest-name", synth.manifest_name)->capture_default_str();
  cmd_synth->add_option("--shape", synth.shape, "impact or sinusoid")->capture_default_str();
  cmd_synth->add_option("--fs", synth.recipe.fs)->capture_default_str();
  cmd_synth->add_option("--length", synth.recipe.length, "Samples per recording")
      ->capture_default_str();
  cmd_synth->add_option("--carrier-hz", synth.recipe.carrier_hz)->capture_default_str();
  cmd_synth->add_option("--f-ir", synth.recipe.f_ir, "Inner-race rate, Hz")
      ->capture_default_str();
  cmd_synth->add_option("--f-or", synth.recipe.f_or, "Outer-race rate, Hz")
      ->capture_default_str();
  cmd_synth->add_option("--depth", synth.recipe.depth)->capture_default_str();
  cmd_synth->add_option("--snr-db", synth.recipe.snr_db, "inf disables noise")
      ->capture_default_str();
  cmd_synth->add_option("--decay-s", synth.recipe.decay_s)->capture_default_str();
  add_common(cmd_synth, true);

  PlotArgs plot;
  auto* cmd_plot = app.add_subcommand("plot-data", "Export the representations of one segment");
  cmd_plot->add_option("--input", plot.input)->required();
  cmd_plot->add_option("--format", plot.format, "csv-column, raw-f64le or wav-pcm")
      ->capture_default_str();
  cmd_plot->add_option("--fs", plot.fs)->capture_default_str();
  cmd_plot->add_option("--segment", plot.segment, "Segment index")->capture_default_str();
  cmd_plot->add_option("--segment-len", plot.segment_len, "0 = whole recording")
      ->capture_default_str();
  cmd_plot->add_option("--out-dir", plot.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    common.seed = env_u64("JIAF_SEED", 42);
    common.workers = static_cast<unsigned>(env_u64("JIAF_WORKERS", 0));
    for (auto* sub : app.get_subcommands()) {
      if (sub->get_option_no_throw("--seed") && sub->count("--seed") > 0) {
        common.seed = seed_flag;
      }
      if (sub->get_option_no_throw("--workers") && sub->count("--workers") > 0) {
        common.workers = workers_flag;
      }
    }

    if (app.got_subcommand(cmd_extract)) return run_extract(extract, common);
    if (app.got_subcommand(cmd_train)) return run_train_eval(train, common);
    if (app.got_subcommand(cmd_predict)) return run_predict(predict);
    if (app.got_subcommand(cmd_bench)) return run_bench(bench, common);
    if (app.got_subcommand(cmd_synth)) return run_synth(synth, common);
    if (app.got_subcommand(cmd_plot)) return run_plot_data(plot);
  } catch (const Failure& e) {
    std::fprintf(stderr, "jiaf: %s error: %s\n", jiaf_status_name(e.status), e.what());
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "jiaf: error: %s\n", e.what());
    return kExitOther;
  }
  return kExitOther;
}
