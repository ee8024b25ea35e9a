// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <stdexcept>
#include <string>

namespace jiaf {

enum class ErrorKind {
  invalid_input,
  too_short,
  degenerate,
  ingestion,
  config,
  stratification,
  empty_dataset,
  io,
  model_format,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a category that the C API maps onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jiaf
