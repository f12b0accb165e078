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

#include "snake/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "snake/errors.hpp"
#include "snake/random.hpp"
#include "snake/spectrum.hpp"

namespace snake {

namespace {

constexpr std::size_t kWindowPoints = 1024;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Matrix ray_points(std::span<const double> u, std::span<const double> z) {
  Matrix pts = Matrix::uninitialized(z.size(), u.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) pts(i, j) = z[i] * u[j];
  return pts;
}

// Spacing that resolves the fastest first-layer Snake oscillation along u
// with eight samples per period.
double window_spacing(const Mlp& net, std::span<const double> u) {
  if (!net.activation().is_snake()) return 0.125;
  const auto& w = net.layers().front().weight;
  double rate = 0.0;
  for (std::size_t r = 0; r < w.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < w.cols(); ++c) s += w(r, c) * u[c];
    if (net.normalizer()) s *= net.normalizer()->scale[0];
    rate = std::max(rate, std::abs(s));
  }
  const double a = net.frequency(0);
  if (rate == 0.0) return 0.125;
  // sin^2(a s z) has period pi / (a s).
  return std::min(0.125, std::numbers::pi / (a * rate) / 8.0);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string to_string(Asymptotics a) {
  switch (a) {
    case Asymptotics::kAffine: return "affine";
    case Asymptotics::kConstant: return "constant";
    case Asymptotics::kPeriodicResidual: return "periodic_residual";
    case Asymptotics::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

std::vector<double> geometric_grid(double base, int lo, int hi) {
  if (!(base > 1.0) || hi < lo) throw ContractError("geometric_grid: need base > 1, hi >= lo");
  std::vector<double> g;
  for (int k = lo; k <= hi; ++k) g.push_back(std::pow(base, k));
  return g;
}

RayProbeReport probe_ray(const Mlp& net, std::span<const double> u_in,
                         std::span<const double> z_grid) {
  if (z_grid.size() < 8) throw ContractError("probe_ray: z grid needs at least 8 points");
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (!(z_grid[i] > 0.0) || (i > 0 && !(z_grid[i] > z_grid[i - 1])))
      throw ContractError("probe_ray: z grid must be positive and strictly increasing");
  }
  if (u_in.size() != net.input_dim())
    throw ShapeError("probe_ray: direction has dimension " + std::to_string(u_in.size()) +
                     ", network input is " + std::to_string(net.input_dim()));
  const double un = norm2(u_in);
  if (!(un > 0.0)) throw ContractError("probe_ray: direction must be non-zero");

  RayProbeReport rep;
  rep.direction.assign(u_in.begin(), u_in.end());
  for (double& v : rep.direction) v /= un;
  rep.z.assign(z_grid.begin(), z_grid.end());
  rep.outputs = net.forward(ray_points(rep.direction, rep.z));

  const std::size_t n = rep.z.size();
  const std::size_t first = n / 2;
  const std::size_t dout = rep.outputs.cols();
  const auto top_z = std::span<const double>(rep.z).subspan(first);

  rep.limit.assign(rep.outputs.row_view(n - 1).begin(), rep.outputs.row_view(n - 1).end());
  const double scale = std::max(1.0, norm2(rep.limit));

  rep.slope.resize(dout);
  rep.intercept.resize(dout);
  std::vector<double> col(n - first);
  double worst = 0.0;
  for (std::size_t k = 0; k < dout; ++k) {
    for (std::size_t i = first; i < n; ++i) col[i - first] = rep.outputs(i, k);
    const LineFit fit = fit_line(top_z, col);
    rep.slope[k] = fit.slope;
    rep.intercept[k] = fit.intercept;
    for (std::size_t i = first; i < n; ++i)
      worst = std::max(worst, std::abs(rep.outputs(i, k) - (fit.slope * rep.z[i] + fit.intercept)));
  }
  rep.affine_residual = worst / scale;

  double dev = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < dout; ++k) {
      const double d = rep.outputs(i, k) - rep.limit[k];
      s += d * d;
    }
    dev = std::max(dev, std::sqrt(s));
  }
  rep.constant_deviation = dev / scale;

  // Uniform window [z_max - (N-1) h, z_max].
  rep.window_spacing = window_spacing(net, rep.direction);
  std::vector<double> wz(kWindowPoints);
  const double zmax = rep.z.back();
  for (std::size_t i = 0; i < kWindowPoints; ++i)
    wz[i] = zmax - static_cast<double>(kWindowPoints - 1 - i) * rep.window_spacing;
  const Matrix wout = net.forward(ray_points(rep.direction, wz));
  double amp = 0.0;
  std::vector<double> wcol(kWindowPoints);
  for (std::size_t k = 0; k < dout; ++k) {
    for (std::size_t i = 0; i < kWindowPoints; ++i) wcol[i] = wout(i, k);
    // Detrend against the offset from the window start to keep the fit
    // well conditioned at large z.
    std::vector<double> offs(kWindowPoints);
    for (std::size_t i = 0; i < kWindowPoints; ++i) offs[i] = static_cast<double>(i) * rep.window_spacing;
    const auto resid = detrend_linear(offs, wcol);
    for (double r : resid) amp = std::max(amp, std::abs(r));
    if (k == 0) {
      rep.window_spectrum = magnitude_spectrum(resid);
      const std::size_t peak = dominant_bin(rep.window_spectrum, 1);
      std::vector<double> rest(rep.window_spectrum.begin() + 1, rep.window_spectrum.end());
      const double med = median(rest);
      rep.peak_to_median = med > 0.0 ? rep.window_spectrum[peak] / med : 0.0;
      rep.dominant_frequency = bin_frequency(peak, kWindowPoints, rep.window_spacing);
    }
  }
  rep.periodic_amplitude = amp;
  rep.window_relative_residual = amp / scale;
  return rep;
}

Asymptotics classify_asymptotics(const RayProbeReport& report) {
  const double scale = std::max(1.0, norm2(report.limit));
  if (norm2(report.slope) / scale < 1e-10 && report.constant_deviation < 1e-8)
    return Asymptotics::kConstant;
  if (report.window_relative_residual > 1e-12 && report.peak_to_median >= 5.0)
    return Asymptotics::kPeriodicResidual;
  if (report.affine_residual < 1e-9) return Asymptotics::kAffine;
  return Asymptotics::kUndetermined;
}

PatternAffine relu_pattern_affine(const Mlp& net, std::span<const double> u, double z) {
  const auto kind = net.activation().kind();
  if (kind != ActivationKind::kReLU && kind != ActivationKind::kLeakyReLU)
    throw ContractError("relu_pattern_affine: network must use ReLU or LeakyReLU");
  if (u.size() != net.input_dim()) throw ShapeError("relu_pattern_affine: direction size");
  const double leak = kind == ActivationKind::kLeakyReLU ? net.activation().param() : 0.0;
  // Track h(z') = z' * s + t exactly as an affine function of z' along u.
  std::vector<double> s(u.begin(), u.end()), t(u.size(), 0.0);
  if (const auto& norm = net.normalizer()) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      t[j] = -norm->shift[j] * norm->scale[j];
      s[j] *= norm->scale[j];
    }
  }
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const auto& layer = net.layers()[l];
    std::vector<double> ns(layer.weight.rows()), nt(layer.weight.rows());
    for (std::size_t r = 0; r < layer.weight.rows(); ++r) {
      double a = 0.0, b = layer.bias(0, r);
      for (std::size_t c = 0; c < layer.weight.cols(); ++c) {
        a += layer.weight(r, c) * s[c];
        b += layer.weight(r, c) * t[c];
      }
      if (l + 1 < net.num_layers() && !(z * a + b > 0.0)) {
        a *= leak;
        b *= leak;
      }
      ns[r] = a;
      nt[r] = b;
    }
    s = std::move(ns);
    t = std::move(nt);
  }
  return {s, t};
}

std::vector<RangeMse> extrapolation_mse(const Mlp& net, const std::function<double(double)>& target,
                                        std::span<const NamedRange> ranges,
                                        std::size_t points_per_range) {
  if (net.input_dim() != 1 || net.output_dim() != 1)
    throw ShapeError("extrapolation_mse requires a 1 -> 1 network");
  if (points_per_range < 2) throw ContractError("extrapolation_mse: need at least 2 points");
  std::vector<RangeMse> out;
  for (const auto& r : ranges) {
    std::vector<double> xs(points_per_range);
    for (std::size_t i = 0; i < points_per_range; ++i)
      xs[i] = r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(points_per_range - 1);
    const Matrix pred = net.forward(Matrix::column(xs));
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = pred(i, 0) - target(xs[i]);
      acc += d * d;
    }
    out.push_back({r.name, acc / static_cast<double>(xs.size())});
  }
  return out;
}

std::vector<NamedRange> standard_ranges(double lo, double hi, double gap_lo, double gap_hi,
                                        double reach) {
  return {{"gap", gap_lo, gap_hi}, {"left", lo - reach, lo}, {"right", hi, hi + reach}};
}

Mlp random_probe_net(const Activation& act, std::size_t depth, std::size_t in, std::size_t hidden,
                     std::size_t out, std::uint64_t seed) {
  if (depth < 1) throw ContractError("random_probe_net: depth must be >= 1");
  MlpConfig cfg;
  cfg.widths.push_back(in);
  for (std::size_t i = 1; i < depth; ++i) cfg.widths.push_back(hidden);
  cfg.widths.push_back(out);
  cfg.activation = act;
  cfg.init = InitScheme::kaiming();
  cfg.seed = seed;
  Mlp net(cfg);
  Rng rng = Rng(seed).split(0xb1a5);
  std::vector<DenseLayer> layers = net.layers();
  for (auto& layer : layers)
    for (double& b : layer.bias.data()) b = rng.uniform(-1.0, 1.0);
  return Mlp(std::move(layers), act, false, false);
}

std::vector<double> random_direction(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(d);
  double n = 0.0;
  while (n < 1e-8) {
    for (double& v : u) v = rng.normal();
    n = norm2(u);
  }
  for (double& v : u) v /= n;
  return u;
}

}  // namespace snake
