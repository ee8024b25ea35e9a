// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/plot_export.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/numeric.hpp"
#include "core/representations.hpp"

namespace jiaf {
namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, path.string() + ": cannot open for writing");
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error(ErrorKind::io, path.string() + ": write failed");
  }
}

}  // namespace

std::vector<std::filesystem::path> write_plot_data(
    const Signal& signal, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::io, dir.string() + ": " + ec.message());
  }
  const InstantaneousSeries series = analyze(signal);
  const std::size_t n = series.size();
  auto time = [&](std::size_t i) {
    return format_double(static_cast<double>(i) / series.fs);
  };

  std::vector<std::filesystem::path> written;

  {
    const auto path = dir / "instantaneous.csv";
    auto out = open_csv(path);
    out << "time_s,ia,ip_rad,if_hz\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << time(i) << ',' << format_double(series.ia[i]) << ','
          << format_double(series.ip[i]) << ',' << format_double(series.ifreq[i])
          << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "iafm.csv";
    auto out = open_csv(path);
    const Iafm iafm = compute_iafm(series);
    out << "freq_hz,amp\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << format_double(iafm.freq[i]) << ',' << format_double(iafm.amp[i]) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "iafc.csv";
    auto out = open_csv(path);
    const Iafc iafc = compute_iafc(series);
    out << "lag,value\n";
    for (std::size_t i = 0; i < iafc.values.size(); ++i) {
      out << iafc.lag_at(i) << ',' << format_double(iafc.values[i]) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "heatmap.csv";
    auto out = open_csv(path);
    write_heatmap_csv(out, series);
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "iefd.csv";
    auto out = open_csv(path);
    const Iefd iefd = compute_iefd(series);
    out << "time_s,ie_norm,if_norm,iefd\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << time(i) << ',' << format_double(iefd.ie_norm[i]) << ','
          << format_double(iefd.if_norm[i]) << ',' << format_double(iefd.values[i])
          << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace jiaf
