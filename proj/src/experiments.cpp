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

#include "snake/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "snake/errors.hpp"
#include "snake/random.hpp"
#include "snake/spectrum.hpp"

namespace snake {

namespace {

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots so the outcome does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool relu_family(const Activation& act) {
  return act.kind() == ActivationKind::kReLU || act.kind() == ActivationKind::kLeakyReLU;
}

std::vector<double> curve_grid(const SyntheticTask& task, std::size_t n) {
  const double lo = task.train_lo - task.reach, hi = task.train_hi + task.reach;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

RunRecord train_run(const SyntheticTask& task, const Dataset& data, const Activation& act,
                    const ExperimentConfig& cfg, std::uint64_t seed,
                    const std::vector<double>& curve_x) {
  RunRecord rec;
  rec.seed = seed;
  TrainConfig tc = cfg.train;
  tc.seed = Rng(seed).split(7).next_u64();
  try {
    TrainResult r = train(make_network(task, act, cfg, seed), data.x_train, data.y_train, tc);
    rec.train_mse = evaluate_mse(r.net, data.x_train, data.y_train);
    if (!std::isfinite(rec.train_mse)) throw TrainingDiverged(tc.steps, "non-finite final loss");
    const auto ranges = task.test_ranges();
    const auto fn = [&](double x) { return task.evaluate(x); };
    rec.range_mse = extrapolation_mse(r.net, fn, ranges, task.test_points_per_range);
    double ext = 0.0;
    int count = 0;
    for (const auto& m : rec.range_mse) {
      if (m.name == "left" || m.name == "right") {
        ext += m.mse;
        ++count;
      }
    }
    rec.extrapolation_mse = count ? ext / count : 0.0;
    rec.range_mse.push_back({"extrapolation", rec.extrapolation_mse});
    const Matrix pred = r.net.forward(Matrix::column(curve_x));
    rec.curve.assign(pred.data().begin(), pred.data().end());
    rec.net = std::move(r.net);
  } catch (const TrainingDiverged& e) {
    rec.diverged = true;
    rec.diverged_step = e.step();
  }
  return rec;
}

void summarize(ActivationSummary& s) {
  std::vector<const RunRecord*> ok;
  for (const auto& r : s.runs) {
    if (r.diverged) ++s.diverged;
    else ok.push_back(&r);
  }
  if (ok.empty()) return;
  const std::size_t n = ok.front()->curve.size();
  s.median.resize(n);
  s.p5.resize(n);
  s.p95.resize(n);
  std::vector<double> col(ok.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ok.size(); ++k) col[k] = ok[k]->curve[i];
    s.median[i] = percentile(col, 50.0);
    s.p5[i] = percentile(col, 5.0);
    s.p95[i] = percentile(col, 95.0);
  }
  for (std::size_t j = 0; j < ok.front()->range_mse.size(); ++j) {
    for (std::size_t k = 0; k < ok.size(); ++k) col[k] = ok[k]->range_mse[j].mse;
    s.median_range_mse.push_back({ok.front()->range_mse[j].name, percentile(col, 50.0)});
  }
  for (std::size_t k = 0; k < ok.size(); ++k) col[k] = ok[k]->extrapolation_mse;
  s.median_extrapolation_mse = percentile(col, 50.0);
}

// Largest magnitude within one bin of `bin`.
double near_bin(const std::vector<double>& mag, std::size_t bin) {
  double v = 0.0;
  for (std::size_t k = bin == 0 ? 0 : bin - 1; k <= bin + 1 && k < mag.size(); ++k)
    v = std::max(v, mag[k]);
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  train.validate();
  if (runs < 1) throw ContractError("experiment: need at least one run");
  if (curve_points < 2) throw ContractError("experiment: need at least two curve points");
  for (std::size_t w : hidden)
    if (w < 1) throw ContractError("experiment: hidden widths must be >= 1");
}

InitScheme default_init(const Activation& act) {
  return relu_family(act) ? InitScheme::kaiming() : InitScheme::snake_uniform();
}

Mlp make_network(const SyntheticTask& task, const Activation& act, const ExperimentConfig& cfg,
                 std::uint64_t seed) {
  MlpConfig mc;
  mc.widths.push_back(1);
  mc.widths.insert(mc.widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  mc.widths.push_back(1);
  mc.activation = act;
  mc.init = cfg.init.value_or(default_init(act));
  mc.seed = seed;
  Mlp net(mc);
  if (cfg.rescale_inputs)
    net.set_normalizer(InputNormalizer::to_unit_interval(task.train_lo, task.train_hi));
  return net;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t run) {
  return Rng(base).split(run).next_u64();
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) throw ContractError("percentile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

ComparisonReport run_comparison(const SyntheticTask& task, const std::vector<Activation>& acts,
                                const ExperimentConfig& cfg) {
  cfg.validate();
  if (acts.empty()) throw ContractError("run_comparison: no activations given");
  const Dataset data = generate(task);
  ComparisonReport rep;
  rep.task = task;
  rep.curve_x = curve_grid(task, cfg.curve_points);
  rep.activations.resize(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i) {
    rep.activations[i].label = acts[i].name();
    rep.activations[i].activation = acts[i];
    rep.activations[i].runs.resize(cfg.runs);
  }
  parallel_for(acts.size() * cfg.runs, cfg.threads, [&](std::size_t job) {
    const std::size_t ai = job / cfg.runs, r = job % cfg.runs;
    rep.activations[ai].runs[r] =
        train_run(task, data, acts[ai], cfg, run_seed(cfg.seed, r), rep.curve_x);
  });
  for (auto& s : rep.activations) summarize(s);
  return rep;
}

std::vector<double> SpectrumGrid::x() const {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = start + spacing * static_cast<double>(i);
  return xs;
}

SpectrumGrid spectrum_grid(const SyntheticTask& task, double start) {
  SpectrumGrid g;
  g.start = start;
  const auto period = target_period(task.target);
  const double span = period ? 4.0 * *period : 4.0 * (task.train_hi - task.train_lo);
  g.spacing = span / static_cast<double>(g.points);
  return g;
}

std::vector<double> model_spectrum(const Mlp& net, const SpectrumGrid& grid) {
  const auto xs = grid.x();
  const Matrix y = net.forward(Matrix::column(xs));
  return magnitude_spectrum(detrend_linear(xs, y.data()));
}

NoiseSweepReport noise_sweep(const SyntheticTask& task, const std::vector<Activation>& acts,
                             const std::vector<double>& variances, const ExperimentConfig& cfg) {
  if (variances.empty()) throw ContractError("noise_sweep: no noise variances given");
  NoiseSweepReport rep;
  rep.task = task;
  for (double v : variances) {
    SyntheticTask t = task;
    t.noise_variance = v;
    rep.entries.push_back({v, run_comparison(t, acts, cfg)});
  }
  return rep;
}

SweepReport a_sweep(const SyntheticTask& task, const std::vector<double>& a_values,
                    const ExperimentConfig& cfg) {
  if (a_values.empty()) throw ContractError("a_sweep: no a values given");
  std::vector<Activation> acts;
  for (double a : a_values) acts.push_back(Activation::snake(a));
  ComparisonReport cmp = run_comparison(task, acts, cfg);

  SweepReport rep;
  rep.task = task;
  rep.grid = spectrum_grid(task, task.train_hi);
  rep.curve_x = cmp.curve_x;
  if (const auto p = target_period(task.target)) rep.target_frequency = 1.0 / *p;
  const double bin_width = 1.0 / rep.grid.span();
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    SweepEntry e;
    e.a = a_values[i];
    e.summary = std::move(cmp.activations[i]);
    for (const auto& run : e.summary.runs) {
      if (run.diverged) continue;
      const auto mag = model_spectrum(*run.net, rep.grid);
      const double f = bin_frequency(dominant_bin(mag, 1), rep.grid.points, rep.grid.spacing);
      e.dominant_frequency.push_back(f);
      if (rep.target_frequency && std::abs(f - *rep.target_frequency) <= bin_width * (1 + 1e-9))
        ++e.recovered;
    }
    if (!e.dominant_frequency.empty())
      e.median_dominant_frequency = percentile(e.dominant_frequency, 50.0);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

SpectralTrajectory spectral_trajectory(const SyntheticTask& task, const Activation& act,
                                       const ExperimentConfig& cfg, std::size_t stride,
                                       std::uint64_t seed) {
  cfg.validate();
  if (stride < 1) throw ContractError("spectral_trajectory: stride must be >= 1");
  SpectralTrajectory tr;
  tr.task = task;
  tr.seed = seed;
  const double centre = 0.5 * (task.train_lo + task.train_hi);
  tr.grid = spectrum_grid(task, 0.0);
  tr.grid.start = centre - 0.5 * tr.grid.span();

  const auto xs = tr.grid.x();
  std::vector<double> ty(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ty[i] = task.evaluate(xs[i]);
  const auto target_mag = magnitude_spectrum(detrend_linear(xs, ty));
  tr.threshold = 0.1 * target_mag[dominant_bin(target_mag, 1)];

  for (double w : target_frequencies(task.target)) {
    const double cycles = w / (2.0 * std::numbers::pi);
    tr.crossings.push_back(
        {w, static_cast<std::size_t>(std::lround(cycles * tr.grid.span())), std::nullopt});
  }

  const Dataset data = generate(task);
  TrainConfig tc = cfg.train;
  tc.seed = Rng(seed).split(7).next_u64();
  Mlp net = make_network(task, act, cfg, seed);
  const auto record = [&](std::size_t step, const Mlp& current) {
    SpectrumCheckpoint cp;
    cp.step = step;
    cp.train_mse = evaluate_mse(current, data.x_train, data.y_train);
    cp.magnitude = model_spectrum(current, tr.grid);
    for (std::size_t k = cp.magnitude.size(); k-- > 1;) {
      if (cp.magnitude[k] > tr.threshold) {
        cp.highest_active_frequency = bin_frequency(k, tr.grid.points, tr.grid.spacing);
        break;
      }
    }
    for (auto& c : tr.crossings)
      if (!c.step && near_bin(cp.magnitude, c.bin) > tr.threshold) c.step = step;
    tr.checkpoints.push_back(std::move(cp));
  };
  train(std::move(net), data.x_train, data.y_train, tc, stride, record);
  return tr;
}

}  // namespace snake
