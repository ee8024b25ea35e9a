// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/analytic_signal.hpp"
#include "core/features.hpp"
#include "core/recording_io.hpp"
#include "core/synth.hpp"

namespace jiaf {

enum class Method { proposed, stft };

Method parse_method(std::string_view name);  // ErrorKind::config
std::string_view to_string(Method method);

/// Non-overlapping windows of `segment_len` samples; the trailing remainder
/// is dropped. A recording shorter than one segment yields no segments.
std::vector<Signal> segment(const Signal& recording, std::size_t segment_len);

struct ManifestEntry {
  std::filesystem::path path;
  std::string source;  // path as written in the manifest; used as provenance
  std::string label;  // class name; numeric labels are kept as their text
  double fs = 0.0;
  RecordingFormat format = RecordingFormat::raw_f64le;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> classes;  // declared order, or derived from labels
};

/// Reads `{"classes": [...]?, "entries": [{path, label, fs, format}]}`.
/// Relative paths resolve against the manifest's directory.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

/// Every *.csv, *.f64 / *.raw and *.wav file below `dir`, sorted by path.
/// Files inside a subdirectory take its name as their label.
Manifest manifest_from_directory(const std::filesystem::path& dir, double fs);

/// Writes the synthetic benchmark as raw-f64le files `class<c>_<i>.f64` in
/// `dir` together with a manifest `dir / manifest_name`.
Manifest write_synthetic_recordings(const SynthRecipe& recipe,
                                    std::size_t per_class, std::uint64_t seed,
                                    const std::filesystem::path& dir,
                                    const std::string& manifest_name);

/// Numeric labels sort numerically, anything else lexicographically.
std::vector<std::string> derive_class_order(std::vector<std::string> labels);

struct Provenance {
  std::string source;
  std::size_t segment = 0;
};

struct Row {
  FeatureVector features;
  std::optional<std::size_t> label;  // index into class_names
  Provenance provenance;
};

struct LabeledDataset {
  std::vector<Row> rows;
  std::vector<std::string> class_names;
  Method method = Method::proposed;

  std::size_t size() const noexcept { return rows.size(); }
  std::vector<std::size_t> class_counts() const;
};

struct DroppedSegment {
  Provenance provenance;
  std::string reason;
};

struct Diagnostics {
  std::size_t recordings = 0;
  std::size_t segments = 0;
  std::vector<DroppedSegment> dropped;
  std::vector<std::string> warnings;
};

/// In-memory recording with an optional class label.
struct SourceRecording {
  std::string source;
  Signal signal;
  std::optional<std::string> label;
};

struct BuildOptions {
  std::size_t segment_len = 6400;
  Method method = Method::proposed;
  FeatureOptions features;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct BuildResult {
  LabeledDataset dataset;
  Diagnostics diagnostics;
};

/// Segments every recording and extracts one feature row per segment.
/// Segments that hit a degenerate-input error (or yield non-finite features)
/// are dropped and listed in the diagnostics. Row order is recording order,
/// then segment index, for any worker count. Throws ErrorKind::empty_dataset
/// when no row survives.
BuildResult build_dataset(const std::vector<SourceRecording>& recordings,
                          std::vector<std::string> class_names,
                          const BuildOptions& options);

/// Same, loading manifest entries one at a time.
BuildResult build_dataset(const Manifest& manifest, const BuildOptions& options);

/// Stratified split. Each class contributes round-to-total shares with at
/// least one row on each side. Throws ErrorKind::stratification when a class
/// has fewer than two rows, ErrorKind::config for a fraction outside (0, 1).
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset,
                                                double train_fraction,
                                                std::uint64_t seed);

/// Header `source,segment,label,ss,sc,cov,cp,pl,mer`; the STFT baseline adds a
/// trailing `method` column holding `stft`.
void write_feature_csv(std::ostream& out, const LabeledDataset& dataset);
LabeledDataset read_feature_csv(std::istream& in);

void write_diagnostics(std::ostream& out, const Diagnostics& diagnostics);

}  // namespace jiaf
