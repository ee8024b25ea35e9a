// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <mutex>
#include <utility>

namespace jiaf::fft {
namespace {

// Plans are created once per (size, direction) and never destroyed. FFTW's
// planner is not thread-safe, so creation is serialized; fftw_execute_dft on
// an existing plan is safe from any thread. FFTW_ESTIMATE keeps plan choice
// independent of timing, which keeps outputs bit-identical across runs.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) {
      return it->second;
    }
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan =
        fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                         FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const Complex> in, std::span<Complex> out, int sign) {
  assert(in.size() == out.size());
  if (in.empty()) {
    return;
  }
  fftw_plan plan = cache().get(in.size(), sign);
  // FFTW_PRESERVE_INPUT guarantees `in` is only read.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, FFTW_FORWARD);
}

void inverse(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) {
    v *= scale;
  }
}

std::size_t good_size(std::size_t n) {
  if (n <= 1) {
    return 1;
  }
  std::size_t best = 1;
  while (best < n) {
    best <<= 1;
  }
  for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
    for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
      std::size_t candidate = p35;
      while (candidate < n) {
        candidate <<= 1;
      }
      if (candidate < best) {
        best = candidate;
      }
    }
  }
  return best;
}

}  // namespace jiaf::fft
