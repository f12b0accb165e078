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

#include "snake/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "snake/errors.hpp"

namespace snake {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<std::complex<double>> fft(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw ContractError("fft: empty input");
  const int len = static_cast<int>(n);
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan;
  {
    // The FFTW planner is not thread-safe; execution is.
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(len, in, out, FFTW_ESTIMATE);
  }
  std::copy(samples.begin(), samples.end(), in);
  fftw_execute(plan);
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) result[k] = {out[k][0], out[k][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  fftw_free(in);
  return result;
}

std::vector<double> magnitude_spectrum(std::span<const double> samples) {
  const auto spec = fft(samples);
  const std::size_t n = samples.size();
  std::vector<double> mag(spec.size());
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(spec[k]) / static_cast<double>(n);
  return mag;
}

double bin_frequency(std::size_t k, std::size_t n, double spacing) {
  return static_cast<double>(k) / (static_cast<double>(n) * spacing);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ShapeError("fit_line: " + std::to_string(x.size()) + " x values vs " + std::to_string(y.size()) +
                     " y values");
  if (x.size() < 2) throw ContractError("fit_line needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::vector<double> detrend_linear(std::span<const double> x, std::span<const double> y) {
  const LineFit fit = fit_line(x, y);
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - (fit.slope * x[i] + fit.intercept);
  return r;
}

std::size_t dominant_bin(std::span<const double> spectrum, std::size_t first_bin) {
  if (first_bin >= spectrum.size()) throw ContractError("dominant_bin: empty search range");
  const auto it = std::max_element(spectrum.begin() + static_cast<std::ptrdiff_t>(first_bin),
                                   spectrum.end());
  return static_cast<std::size_t>(it - spectrum.begin());
}

}  // namespace snake
