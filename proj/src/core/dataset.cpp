// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/numeric.hpp"
#include "core/parallel.hpp"
#include "core/stft_baseline.hpp"

namespace jiaf {

Method parse_method(std::string_view name) {
  if (name == "proposed") return Method::proposed;
  if (name == "stft") return Method::stft;
  throw Error(ErrorKind::config, "unknown method '" + std::string(name) +
                                     "' (expected proposed or stft)");
}

std::string_view to_string(Method method) {
  return method == Method::stft ? "stft" : "proposed";
}

std::vector<Signal> segment(const Signal& recording, std::size_t segment_len) {
  if (segment_len < Signal::kMinLength) {
    throw Error(ErrorKind::config,
                "segment length must be at least " +
                    std::to_string(Signal::kMinLength));
  }
  std::vector<Signal> out;
  const auto samples = recording.samples();
  const std::size_t count = samples.size() / segment_len;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto first = samples.begin() + static_cast<std::ptrdiff_t>(s * segment_len);
    out.emplace_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(segment_len)),
                     recording.fs());
  }
  return out;
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (const Row& row : rows) {
    if (row.label) {
      ++counts[*row.label];
    }
  }
  return counts;
}

// Manifest -------------------------------------------------------------------

namespace {

std::string label_text(const nlohmann::json& value, const std::string& where) {
  if (value.is_string()) {
    return value.get<std::string>();
  }
  if (value.is_number_integer()) {
    return std::to_string(value.get<long long>());
  }
  throw Error(ErrorKind::config, where + ": label must be an integer or a string");
}

bool is_integer_text(const std::string& s) {
  if (s.empty()) {
    return false;
  }
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) {
    return false;
  }
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<std::size_t> class_index(const std::vector<std::string>& classes,
                                       const std::string& label) {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - classes.begin());
}

}  // namespace

std::vector<std::string> derive_class_order(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (std::all_of(labels.begin(), labels.end(), is_integer_text)) {
    std::sort(labels.begin(), labels.end(),
              [](const std::string& a, const std::string& b) {
                return std::stoll(a) < std::stoll(b);
              });
  }
  return labels;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ingestion, path.string() + ": cannot open manifest");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ingestion, path.string() + ": byte offset " +
                                          std::to_string(e.byte) +
                                          ": malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorKind::ingestion,
                path.string() + ": manifest must be an object with an 'entries' array");
  }

  const std::filesystem::path base = path.parent_path();
  Manifest manifest;
  std::vector<std::string> labels;
  std::size_t index = 0;
  for (const auto& item : doc["entries"]) {
    const std::string where =
        path.string() + ": entries[" + std::to_string(index++) + "]";
    if (!item.is_object() || !item.contains("path") || !item["path"].is_string() ||
        !item.contains("fs") || !item["fs"].is_number() ||
        !item.contains("format") || !item["format"].is_string()) {
      throw Error(ErrorKind::ingestion,
                  where + ": needs string 'path', numeric 'fs' and string 'format'");
    }
    ManifestEntry entry;
    entry.source = item["path"].get<std::string>();
    entry.path = entry.source;
    if (entry.path.is_relative()) {
      entry.path = base / entry.path;
    }
    entry.fs = item["fs"].get<double>();
    if (!(entry.fs > 0.0)) {
      throw Error(ErrorKind::config, where + ": fs must be positive");
    }
    entry.format = parse_recording_format(item["format"].get<std::string>());
    if (item.contains("label") && !item["label"].is_null()) {
      entry.label = label_text(item["label"], where);
      labels.push_back(entry.label);
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(entry.path, ec)) {
      throw Error(ErrorKind::ingestion,
                  where + ": recording '" + entry.path.string() + "' not found");
    }
    manifest.entries.push_back(std::move(entry));
  }

  if (doc.contains("classes")) {
    if (!doc["classes"].is_array()) {
      throw Error(ErrorKind::config, path.string() + ": 'classes' must be an array");
    }
    for (const auto& c : doc["classes"]) {
      manifest.classes.push_back(label_text(c, path.string() + ": classes"));
    }
    for (const auto& label : labels) {
      if (!class_index(manifest.classes, label)) {
        throw Error(ErrorKind::config, path.string() + ": label '" + label +
                                           "' is not in the declared classes");
      }
    }
  } else {
    manifest.classes = derive_class_order(labels);
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  nlohmann::ordered_json doc;
  doc["classes"] = manifest.classes;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::ordered_json item;
    item["path"] = e.source.empty() ? e.path.generic_string() : e.source;
    if (is_integer_text(e.label)) {
      item["label"] = std::stoll(e.label);
    } else {
      item["label"] = e.label;
    }
    item["fs"] = e.fs;
    item["format"] = std::string(to_string(e.format));
    doc["entries"].push_back(std::move(item));
  }
  std::ofstream out(path, std::ios::trunc);
  out << doc.dump(2) << '\n';
  if (!out) {
    throw Error(ErrorKind::io, path.string() + ": write failed");
  }
}

Manifest manifest_from_directory(const std::filesystem::path& dir, double fs) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::ingestion, dir.string() + ": not a directory");
  }
  if (!(fs > 0.0)) {
    throw Error(ErrorKind::config, "fs must be positive");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::recursive_directory_iterator(dir)) {
    if (item.is_regular_file()) {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());

  Manifest manifest;
  std::vector<std::string> labels;
  for (const auto& file : files) {
    const std::string ext = file.extension().string();
    ManifestEntry entry;
    if (ext == ".csv") {
      entry.format = RecordingFormat::csv_column;
    } else if (ext == ".f64" || ext == ".raw") {
      entry.format = RecordingFormat::raw_f64le;
    } else if (ext == ".wav") {
      entry.format = RecordingFormat::wav_pcm;
    } else {
      continue;
    }
    entry.path = file;
    entry.source = std::filesystem::relative(file, dir).generic_string();
    entry.fs = fs;
    if (file.parent_path() != dir) {
      entry.label = file.parent_path().filename().string();
      labels.push_back(entry.label);
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (manifest.entries.empty()) {
    throw Error(ErrorKind::ingestion, dir.string() + ": no recordings found");
  }
  manifest.classes = derive_class_order(labels);
  return manifest;
}

Manifest write_synthetic_recordings(const SynthRecipe& recipe,
                                    std::size_t per_class, std::uint64_t seed,
                                    const std::filesystem::path& dir,
                                    const std::string& manifest_name) {
  const auto signals = synth_generate(recipe, per_class, seed);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::io, dir.string() + ": " + ec.message());
  }
  Manifest manifest;
  manifest.classes = {"1", "2", "3", "4"};
  for (std::size_t i = 0; i < signals.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "class%d_%04zu.f64", signals[i].label,
                  i % per_class);
    write_raw_f64le(dir / name, signals[i].signal.samples());
    ManifestEntry entry;
    entry.path = dir / name;
    entry.source = name;
    entry.label = std::to_string(signals[i].label);
    entry.fs = recipe.fs;
    entry.format = RecordingFormat::raw_f64le;
    manifest.entries.push_back(std::move(entry));
  }
  write_manifest(dir / manifest_name, manifest);
  return manifest;
}

// Batch extraction -------------------------------------------------------------

namespace {

struct SegmentOutcome {
  std::optional<FeatureVector> features;
  std::string reason;
};

SegmentOutcome extract_one(const Signal& s, const BuildOptions& options) {
  try {
    FeatureVector f = options.method == Method::stft
                          ? extract_stft_features(s, options.features)
                          : extract_features(s, options.features);
    if (!f.is_finite()) {
      return {std::nullopt, "non-finite feature value"};
    }
    return {f, {}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate) {
      throw;
    }
    return {std::nullopt, e.what()};
  }
}

struct PendingSegment {
  const Signal* signal;
  std::size_t recording;
  std::size_t index;
};

// Extracts every pending segment (in parallel) and appends rows in order.
void run_segments(const std::vector<PendingSegment>& pending,
                  const std::vector<std::string>& sources,
                  const std::vector<std::optional<std::size_t>>& labels,
                  const BuildOptions& options, BuildResult& result) {
  std::vector<SegmentOutcome> outcomes(pending.size());
  parallel_for(pending.size(), options.workers, [&](std::size_t i) {
    try {
      outcomes[i] = extract_one(*pending[i].signal, options);
    } catch (const Error& e) {
      throw Error(e.kind(), sources[pending[i].recording] + " segment " +
                                std::to_string(pending[i].index) + ": " + e.what());
    }
  });
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Provenance prov{sources[pending[i].recording], pending[i].index};
    ++result.diagnostics.segments;
    if (outcomes[i].features) {
      result.dataset.rows.push_back(
          Row{*outcomes[i].features, labels[pending[i].recording], std::move(prov)});
    } else {
      result.diagnostics.dropped.push_back({std::move(prov), outcomes[i].reason});
    }
  }
}

std::optional<std::size_t> resolve_label(const std::vector<std::string>& classes,
                                         const std::optional<std::string>& label,
                                         const std::string& source) {
  if (!label || label->empty()) {
    return std::nullopt;
  }
  auto index = class_index(classes, *label);
  if (!index) {
    throw Error(ErrorKind::config,
                source + ": label '" + *label + "' is not a known class");
  }
  return index;
}

void check_not_empty(const BuildResult& result) {
  if (result.dataset.rows.empty()) {
    throw Error(ErrorKind::empty_dataset,
                "no usable segments (" + std::to_string(result.diagnostics.segments) +
                    " segmented, " + std::to_string(result.diagnostics.dropped.size()) +
                    " dropped)");
  }
}

void warn_if_short(BuildResult& result, const std::string& source,
                   std::size_t segments, std::size_t samples,
                   std::size_t segment_len) {
  if (segments == 0) {
    result.diagnostics.warnings.push_back(
        source + ": " + std::to_string(samples) +
        " samples is shorter than one segment of " + std::to_string(segment_len));
  }
}

}  // namespace

BuildResult build_dataset(const std::vector<SourceRecording>& recordings,
                          std::vector<std::string> class_names,
                          const BuildOptions& options) {
  BuildResult result;
  result.dataset.method = options.method;
  result.dataset.class_names = std::move(class_names);
  result.diagnostics.recordings = recordings.size();

  std::vector<std::string> sources;
  std::vector<std::optional<std::size_t>> labels;
  std::vector<std::vector<Signal>> segments;
  for (const auto& rec : recordings) {
    sources.push_back(rec.source);
    labels.push_back(resolve_label(result.dataset.class_names, rec.label, rec.source));
    segments.push_back(segment(rec.signal, options.segment_len));
    warn_if_short(result, rec.source, segments.back().size(), rec.signal.size(),
                  options.segment_len);
  }
  std::vector<PendingSegment> pending;
  for (std::size_t r = 0; r < segments.size(); ++r) {
    for (std::size_t s = 0; s < segments[r].size(); ++s) {
      pending.push_back({&segments[r][s], r, s});
    }
  }
  run_segments(pending, sources, labels, options, result);
  check_not_empty(result);
  return result;
}

BuildResult build_dataset(const Manifest& manifest, const BuildOptions& options) {
  BuildResult result;
  result.dataset.method = options.method;
  result.dataset.class_names = manifest.classes;
  result.diagnostics.recordings = manifest.entries.size();

  for (const auto& entry : manifest.entries) {
    const std::string source =
        entry.source.empty() ? entry.path.generic_string() : entry.source;
    const Signal recording = load_recording(entry.path, entry.format, entry.fs);
    const std::vector<Signal> segments = segment(recording, options.segment_len);
    warn_if_short(result, source, segments.size(), recording.size(),
                  options.segment_len);
    std::vector<PendingSegment> pending;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      pending.push_back({&segments[s], 0, s});
    }
    std::optional<std::string> label;
    if (!entry.label.empty()) {
      label = entry.label;
    }
    run_segments(pending, {source},
                 {resolve_label(result.dataset.class_names, label, source)},
                 options, result);
  }
  check_not_empty(result);
  return result;
}

// Split -----------------------------------------------------------------------

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset,
                                                double train_fraction,
                                                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::config, "train fraction must lie strictly between 0 and 1");
  }
  const std::size_t k = dataset.class_names.size();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    const auto& label = dataset.rows[i].label;
    if (!label) {
      throw Error(ErrorKind::config, "cannot split rows without labels");
    }
    members[*label].push_back(i);
  }

  std::vector<std::size_t> present;
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) {
      continue;
    }
    if (members[c].size() < 2) {
      throw Error(ErrorKind::stratification,
                  "class '" + dataset.class_names[c] + "' has fewer than 2 rows");
    }
    present.push_back(c);
  }

  // Largest-remainder apportionment of round(f * N) training rows.
  const auto total = static_cast<double>(dataset.rows.size());
  auto remaining = static_cast<long long>(std::llround(train_fraction * total));
  std::vector<std::size_t> take(k, 0);
  std::vector<std::pair<double, std::size_t>> fractions;
  for (std::size_t c : present) {
    const double exact = train_fraction * static_cast<double>(members[c].size());
    take[c] = static_cast<std::size_t>(std::floor(exact));
    remaining -= static_cast<long long>(take[c]);
    fractions.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(fractions.begin(), fractions.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < fractions.size() && remaining > 0; ++i, --remaining) {
    ++take[fractions[i].second];
  }
  for (std::size_t c : present) {
    take[c] = std::clamp<std::size_t>(take[c], 1, members[c].size() - 1);
  }

  std::vector<bool> in_train(dataset.rows.size(), false);
  for (std::size_t c : present) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> order = members[c];
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < take[c]; ++i) {
      in_train[order[i]] = true;
    }
  }

  LabeledDataset train;
  LabeledDataset test;
  for (auto* part : {&train, &test}) {
    part->class_names = dataset.class_names;
    part->method = dataset.method;
  }
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    (in_train[i] ? train : test).rows.push_back(dataset.rows[i]);
  }
  return {std::move(train), std::move(test)};
}

// CSV -------------------------------------------------------------------------

namespace {

constexpr std::string_view kFeatureHeader = "source,segment,label,ss,sc,cov,cp,pl,mer";

void write_field(std::ostream& out, std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    out << text;
    return;
  }
  out << '"';
  for (char c : text) {
    if (c == '"') {
      out << '"';
    }
    out << c;
  }
  out << '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

void write_feature_csv(std::ostream& out, const LabeledDataset& dataset) {
  const bool tagged = dataset.method == Method::stft;
  out << kFeatureHeader << (tagged ? ",method\n" : "\n");
  for (const Row& row : dataset.rows) {
    write_field(out, row.provenance.source);
    out << ',' << row.provenance.segment << ',';
    if (row.label) {
      write_field(out, dataset.class_names[*row.label]);
    }
    const FeatureVector& f = row.features;
    out << ',' << format_double(f.ss) << ',' << format_double(f.sc) << ','
        << format_double(f.cov) << ',' << format_double(f.cp) << ',' << f.pl
        << ',' << format_double(f.mer);
    if (tagged) {
      out << ",stft";
    }
    out << '\n';
  }
}

LabeledDataset read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::ingestion, "feature CSV: empty input");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  bool has_method = false;
  if (line == std::string(kFeatureHeader) + ",method") {
    has_method = true;
  } else if (line != kFeatureHeader) {
    throw Error(ErrorKind::ingestion, "feature CSV line 1: unexpected header '" + line + "'");
  }

  LabeledDataset dataset;
  std::vector<std::string> label_text;
  std::optional<Method> method;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto where = "feature CSV line " + std::to_string(line_no) + ": ";
    const auto fields = split_csv_line(line);
    if (fields.size() != (has_method ? 10u : 9u)) {
      throw Error(ErrorKind::ingestion, where + "expected " +
                                            std::to_string(has_method ? 10 : 9) +
                                            " columns, found " +
                                            std::to_string(fields.size()));
    }
    Row row;
    row.provenance.source = fields[0];
    double numbers[7];
    for (std::size_t i = 0; i < 7; ++i) {
      const std::size_t column = i == 0 ? 1 : i + 2;
      if (!parse_double(fields[column], numbers[i])) {
        throw Error(ErrorKind::ingestion, where + "non-numeric value '" +
                                              fields[column] + "' in column " +
                                              std::to_string(column + 1));
      }
    }
    row.provenance.segment = static_cast<std::size_t>(numbers[0]);
    row.features = {numbers[1], numbers[2], numbers[3], numbers[4],
                    static_cast<std::int64_t>(numbers[5]), numbers[6]};
    if (!row.features.is_finite()) {
      throw Error(ErrorKind::ingestion, where + "non-finite feature value");
    }
    if (has_method) {
      const Method m = parse_method(fields[9]);
      if (method && *method != m) {
        throw Error(ErrorKind::ingestion, where + "mixed methods in one file");
      }
      method = m;
    }
    label_text.push_back(fields[2]);
    dataset.rows.push_back(std::move(row));
  }

  std::vector<std::string> known;
  for (const auto& l : label_text) {
    if (!l.empty()) {
      known.push_back(l);
    }
  }
  dataset.class_names = derive_class_order(known);
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    if (!label_text[i].empty()) {
      dataset.rows[i].label = class_index(dataset.class_names, label_text[i]);
    }
  }
  dataset.method = method.value_or(Method::proposed);
  return dataset;
}

void write_diagnostics(std::ostream& out, const Diagnostics& d) {
  out << "recordings: " << d.recordings << '\n'
      << "segments: " << d.segments << '\n'
      << "rows: " << (d.segments - d.dropped.size()) << '\n'
      << "dropped: " << d.dropped.size() << '\n';
  for (const auto& drop : d.dropped) {
    out << "  " << drop.provenance.source << " segment " << drop.provenance.segment
        << ": " << drop.reason << '\n';
  }
  out << "warnings: " << d.warnings.size() << '\n';
  for (const auto& w : d.warnings) {
    out << "  " << w << '\n';
  }
}

}  // namespace jiaf
