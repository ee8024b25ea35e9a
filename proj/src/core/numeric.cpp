// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/numeric.hpp"

#include <charconv>
#include <system_error>

#include "core/error.hpp"

namespace jiaf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::too_short: return "input too short";
    case ErrorKind::degenerate: return "degenerate input";
    case ErrorKind::ingestion: return "ingestion error";
    case ErrorKind::config: return "configuration error";
    case ErrorKind::stratification: return "stratification error";
    case ErrorKind::empty_dataset: return "empty dataset";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::model_format: return "model format error";
  }
  return "unknown error";
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                std::chars_format::general, 17);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf, end);
}

std::string format_short(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf, end);
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace jiaf
