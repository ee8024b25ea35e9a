// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <filesystem>
#include <span>
#include <string_view>

#include "core/analytic_signal.hpp"

namespace jiaf {

enum class RecordingFormat {
  csv_column,  // one numeric column, optional header line
  raw_f64le,   // little-endian IEEE-754 doubles, no header
  wav_pcm,     // RIFF/WAVE, single channel
};

/// Accepts "csv-column", "raw-f64le", "wav-pcm". Throws ErrorKind::config.
RecordingFormat parse_recording_format(std::string_view tag);
std::string_view to_string(RecordingFormat format);

/// Loads a recording. Integer WAV PCM is scaled into [-1, 1]; a WAV header
/// whose rate disagrees with `fs` is rejected. Errors carry the byte or line
/// offset of the offending data (ErrorKind::ingestion).
Signal load_recording(const std::filesystem::path& path,
                      RecordingFormat format, double fs);

void write_raw_f64le(const std::filesystem::path& path,
                     std::span<const double> samples);

}  // namespace jiaf
