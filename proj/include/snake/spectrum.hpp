// Copyright 2026 The Snake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace snake {

// Non-negative-frequency half of the DFT of a real signal,
// X_k = sum_n x_n exp(-2 pi i k n / N) for k = 0 .. N/2 (FFTW r2c).
// Throws ContractError on an empty input.
std::vector<std::complex<double>> fft(std::span<const double> samples);

// |X_k| / N for k = 0 .. N/2 of a real signal.
std::vector<double> magnitude_spectrum(std::span<const double> samples);

// Frequency (cycles per unit) of bin k for N samples with the given spacing.
double bin_frequency(std::size_t k, std::size_t n, double spacing);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
// Ordinary least squares y ~ slope * x + intercept, centred for stability.
LineFit fit_line(std::span<const double> x, std::span<const double> y);
// y minus its least-squares line.
std::vector<double> detrend_linear(std::span<const double> x, std::span<const double> y);

// Index of the largest entry of `spectrum` at or above `first_bin`.
std::size_t dominant_bin(std::span<const double> spectrum, std::size_t first_bin = 1);

}  // namespace snake
