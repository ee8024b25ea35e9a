// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <filesystem>
#include <vector>

#include "core/analytic_signal.hpp"

namespace jiaf {

/// Writes one CSV per representation of `signal` into `dir`:
///   instantaneous.csv  time_s,ia,ip_rad,if_hz
///   iafm.csv           freq_hz,amp
///   iafc.csv           lag,value          (2N - 1 rows)
///   heatmap.csv        time_s,freq_hz,energy
///   iefd.csv           time_s,ie_norm,if_norm,iefd
/// Returns the paths written, in that order.
std::vector<std::filesystem::path> write_plot_data(
    const Signal& signal, const std::filesystem::path& dir);

}  // namespace jiaf
