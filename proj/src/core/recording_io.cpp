// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/recording_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace jiaf {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path,
                       const std::string& what) {
  throw Error(ErrorKind::ingestion, path.string() + ": " + what);
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(path, "cannot open file");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.empty()) {
    fail(path, "file is empty");
  }
  return bytes;
}

std::uint64_t read_le(const unsigned char* p, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return v;
}

Signal make_checked(const std::filesystem::path& path,
                    std::vector<double> samples, double fs) {
  try {
    return Signal(std::move(samples), fs);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<double> parse_raw(const std::filesystem::path& path,
                              const std::vector<unsigned char>& bytes) {
  if (bytes.size() % 8 != 0) {
    fail(path, "byte offset " + std::to_string(bytes.size() - bytes.size() % 8) +
                   ": trailing " + std::to_string(bytes.size() % 8) +
                   " bytes do not form a complete f64 sample");
  }
  std::vector<double> samples(bytes.size() / 8);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = std::bit_cast<double>(read_le(&bytes[8 * i], 8));
  }
  return samples;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<double> parse_csv(const std::filesystem::path& path,
                              const std::vector<unsigned char>& bytes) {
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()),
                              bytes.size());
  std::vector<double> samples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      continue;
    }
    double value = 0.0;
    if (parse_double(line, value)) {
      samples.push_back(value);
    } else if (line_no == 1) {
      continue;  // header
    } else {
      fail(path, "line " + std::to_string(line_no) + ": non-numeric cell '" +
                     std::string(line) + "'");
    }
  }
  if (samples.empty()) {
    fail(path, "no numeric rows");
  }
  return samples;
}

std::vector<double> parse_wav(const std::filesystem::path& path,
                              const std::vector<unsigned char>& bytes,
                              double fs) {
  auto need = [&](std::size_t offset, std::size_t count) {
    if (offset + count > bytes.size()) {
      fail(path, "byte offset " + std::to_string(offset) +
                     ": truncated WAV header");
    }
  };
  need(0, 12);
  if (std::memcmp(&bytes[0], "RIFF", 4) != 0 ||
      std::memcmp(&bytes[8], "WAVE", 4) != 0) {
    fail(path, "byte offset 0: not a RIFF/WAVE file");
  }

  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t offset = 12;
  while (offset + 8 <= bytes.size() && !have_data) {
    const std::string id(reinterpret_cast<const char*>(&bytes[offset]), 4);
    const auto size = static_cast<std::size_t>(read_le(&bytes[offset + 4], 4));
    const std::size_t body = offset + 8;
    if (id == "fmt ") {
      need(body, 16);
      format_tag = static_cast<std::uint16_t>(read_le(&bytes[body], 2));
      channels = static_cast<std::uint16_t>(read_le(&bytes[body + 2], 2));
      rate = static_cast<std::uint32_t>(read_le(&bytes[body + 4], 4));
      bits = static_cast<std::uint16_t>(read_le(&bytes[body + 14], 2));
      if (format_tag == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE
        need(body, 26);
        format_tag = static_cast<std::uint16_t>(read_le(&bytes[body + 24], 2));
      }
      have_fmt = true;
    } else if (id == "data") {
      data_offset = body;
      data_size = bytes.size() - body;
      // 0 and 0xFFFFFFFF are placeholders left by streaming writers.
      if (size != 0 && size != 0xFFFFFFFFu) {
        if (size > data_size) {
          fail(path, "byte offset " + std::to_string(offset + 4) + ": data chunk declares " +
                         std::to_string(size) + " bytes but only " +
                         std::to_string(data_size) + " remain");
        }
        data_size = size;
      }
      have_data = true;
    }
    offset = body + size + (size & 1);
  }
  if (!have_fmt) {
    fail(path, "missing fmt chunk");
  }
  if (!have_data) {
    fail(path, "missing data chunk");
  }
  if (channels != 1) {
    fail(path, "byte offset 22: " + std::to_string(channels) +
                   " channels; only single-channel WAV is supported");
  }
  if (static_cast<double>(rate) != fs) {
    fail(path, "byte offset 24: WAV sampling rate " + std::to_string(rate) +
                   " Hz does not match declared " + format_short(fs) + " Hz");
  }
  const bool is_float = format_tag == 3;
  if (!(format_tag == 1 || is_float) ||
      (is_float && bits != 32 && bits != 64) ||
      (!is_float && (bits == 0 || bits > 32 || bits % 8 != 0))) {
    fail(path, "byte offset 20: unsupported sample format (tag " +
                   std::to_string(format_tag) + ", " + std::to_string(bits) +
                   " bits)");
  }

  const std::size_t width = bits / 8;
  const std::size_t count = data_size / width;
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t raw = read_le(&bytes[data_offset + i * width], width);
    if (is_float) {
      samples[i] = bits == 32
          ? static_cast<double>(std::bit_cast<float>(static_cast<std::uint32_t>(raw)))
          : std::bit_cast<double>(raw);
    } else if (bits == 8) {
      samples[i] = (static_cast<double>(raw) - 128.0) / 128.0;  // unsigned
    } else {
      const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
      const auto value = static_cast<std::int64_t>((raw ^ sign)) -
                         static_cast<std::int64_t>(sign);
      samples[i] = static_cast<double>(value) / static_cast<double>(sign);
    }
  }
  if (samples.empty()) {
    fail(path, "byte offset " + std::to_string(data_offset) +
                   ": data chunk holds no samples");
  }
  return samples;
}

}  // namespace

RecordingFormat parse_recording_format(std::string_view tag) {
  if (tag == "csv-column") return RecordingFormat::csv_column;
  if (tag == "raw-f64le") return RecordingFormat::raw_f64le;
  if (tag == "wav-pcm") return RecordingFormat::wav_pcm;
  throw Error(ErrorKind::config, "unknown recording format '" +
                                     std::string(tag) +
                                     "' (expected csv-column, raw-f64le, wav-pcm)");
}

std::string_view to_string(RecordingFormat format) {
  switch (format) {
    case RecordingFormat::csv_column: return "csv-column";
    case RecordingFormat::raw_f64le: return "raw-f64le";
    case RecordingFormat::wav_pcm: return "wav-pcm";
  }
  return "unknown";
}

Signal load_recording(const std::filesystem::path& path,
                      RecordingFormat format, double fs) {
  const std::vector<unsigned char> bytes = read_bytes(path);
  switch (format) {
    case RecordingFormat::csv_column:
      return make_checked(path, parse_csv(path, bytes), fs);
    case RecordingFormat::raw_f64le:
      return make_checked(path, parse_raw(path, bytes), fs);
    case RecordingFormat::wav_pcm:
      return make_checked(path, parse_wav(path, bytes, fs), fs);
  }
  fail(path, "unknown format");
}

void write_raw_f64le(const std::filesystem::path& path,
                     std::span<const double> samples) {
  std::vector<unsigned char> bytes(samples.size() * 8);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(samples[i]);
    for (std::size_t b = 0; b < 8; ++b) {
      bytes[8 * i + b] = static_cast<unsigned char>(bits >> (8 * b));
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorKind::io, path.string() + ": write failed");
  }
}

}  // namespace jiaf
