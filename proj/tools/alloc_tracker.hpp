// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>

namespace jiaf_cli {

// Byte counts from the replaced global operator new/delete in this program.
// Allocations made by the library go through the same operators.
std::size_t live_bytes() noexcept;
std::size_t peak_bytes() noexcept;
// Sets the high-water mark to the current live byte count.
void reset_peak() noexcept;

}  // namespace jiaf_cli
