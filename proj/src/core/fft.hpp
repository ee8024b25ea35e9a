// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jiaf::fft {

using Complex = std::complex<double>;

/// Unnormalized forward DFT, X[k] = sum_n x[n] exp(-2 pi i k n / N).
/// `out` must have the same length as `in`; the two may not alias.
void forward(std::span<const Complex> in, std::span<Complex> out);

/// Inverse DFT including the 1/N factor.
void inverse(std::span<const Complex> in, std::span<Complex> out);

/// Smallest 2^a 3^b 5^c that is >= n.
std::size_t good_size(std::size_t n);

}  // namespace jiaf::fft
