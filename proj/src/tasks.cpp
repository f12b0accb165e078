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

#include "snake/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "snake/errors.hpp"
#include "snake/random.hpp"

namespace snake {

namespace {

using std::numbers::pi;

constexpr struct {
  TargetKind kind;
  const char* name;
} kTargets[] = {
    {TargetKind::kLinear, "linear"},   {TargetKind::kTanh, "tanh"},
    {TargetKind::kSin, "sin"},         {TargetKind::kSquare, "x2"},
    {TargetKind::kRect, "rect"},       {TargetKind::kSinMix, "sin_mix"},
    {TargetKind::kCosMix, "cos_mix"},  {TargetKind::kNoisySin, "noisy_sin"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

TargetKind parse_target(std::string_view name) {
  const std::string n = lower(name);
  for (const auto& t : kTargets)
    if (n == t.name) return t.kind;
  throw ContractError("unknown target '" + std::string(name) + "'");
}

std::string target_name(TargetKind kind) {
  for (const auto& t : kTargets)
    if (t.kind == kind) return t.name;
  return "unknown";
}

double target_value(TargetKind kind, double x) {
  switch (kind) {
    case TargetKind::kLinear: return x;
    case TargetKind::kTanh: return std::tanh(x);
    case TargetKind::kSin: return std::sin(x);
    case TargetKind::kSquare: return x * x;
    case TargetKind::kRect: return std::sin(x) >= 0.0 ? 1.0 : -1.0;
    case TargetKind::kSinMix: return std::sin(x) + std::sin(4.0 * x) / 4.0;
    case TargetKind::kCosMix: return std::cos(x / 2.0) + 2.0 * std::sin(x / 3.0);
    case TargetKind::kNoisySin: return std::sin(0.1 * x);
  }
  return 0.0;
}

std::optional<double> target_period(TargetKind kind) {
  switch (kind) {
    case TargetKind::kSin:
    case TargetKind::kRect:
    case TargetKind::kSinMix: return 2.0 * pi;
    case TargetKind::kCosMix: return 12.0 * pi;
    case TargetKind::kNoisySin: return 20.0 * pi;
    default: return std::nullopt;
  }
}

std::vector<double> target_frequencies(TargetKind kind) {
  switch (kind) {
    case TargetKind::kSin:
    case TargetKind::kRect: return {1.0};
    case TargetKind::kSinMix: return {1.0, 4.0};
    case TargetKind::kCosMix: return {1.0 / 3.0, 0.5};
    case TargetKind::kNoisySin: return {0.1};
    default: return {};
  }
}

SyntheticTask SyntheticTask::preset(TargetKind kind) {
  SyntheticTask t;
  t.name = target_name(kind);
  t.target = kind;
  if (kind == TargetKind::kNoisySin) {
    t.train_lo = 1.0;
    t.train_hi = 100.0;
    t.gap_lo = t.gap_hi = 0.0;
    t.samples = 100;
    t.reach = 200.0;
    t.noise_variance = 0.04;
  }
  return t;
}

std::vector<NamedRange> SyntheticTask::test_ranges() const {
  if (target == TargetKind::kNoisySin) {
    // Integer test points T+1 .. T+reach, exclusive of the training grid.
    return {{"right", train_hi + 1.0, train_hi + reach}};
  }
  std::vector<NamedRange> r;
  if (has_gap()) r.push_back({"gap", gap_lo, gap_hi});
  r.push_back({"left", train_lo - reach, train_lo});
  r.push_back({"right", train_hi, train_hi + reach});
  return r;
}

void SyntheticTask::validate() const {
  if (!(train_hi > train_lo)) throw ContractError("task: train_hi must exceed train_lo");
  if (has_gap() && (gap_lo < train_lo || gap_hi > train_hi))
    throw ContractError("task: gap must lie inside the training range");
  if (samples < 1) throw ContractError("task: need at least one sample");
  if (!(noise_variance >= 0.0)) throw ContractError("task: noise variance must be >= 0");
  if (!(reach > 0.0)) throw ContractError("task: reach must be positive");
  if (test_points_per_range < 2) throw ContractError("task: need >= 2 test points per range");
  if (target == TargetKind::kNoisySin &&
      train_hi != train_lo + static_cast<double>(samples) - 1.0)
    throw ContractError("task: noisy_sin trains on train_lo .. train_lo + samples - 1");
  if (has_gap() && (gap_hi - gap_lo) >= (train_hi - train_lo))
    throw ContractError("task: gap covers the whole training range");
}

Dataset generate(const SyntheticTask& task) {
  task.validate();
  Rng rng(task.seed);
  Rng noise = rng.split(1);
  std::vector<double> xs, ys;
  xs.reserve(task.samples);
  if (task.target == TargetKind::kNoisySin) {
    // Unit-spaced time grid x = lo, lo + 1, ...
    for (std::size_t i = 0; i < task.samples; ++i) xs.push_back(task.train_lo + static_cast<double>(i));
  } else {
    Rng pos = rng.split(0);
    while (xs.size() < task.samples) {
      const double x = pos.uniform(task.train_lo, task.train_hi);
      if (task.has_gap() && x > task.gap_lo && x < task.gap_hi) continue;
      xs.push_back(x);
    }
  }
  const double sd = std::sqrt(task.noise_variance);
  for (double x : xs) ys.push_back(task.evaluate(x) + (sd > 0.0 ? sd * noise.normal() : 0.0));

  std::vector<double> tx, ty;
  for (const auto& r : task.test_ranges()) {
    if (task.target == TargetKind::kNoisySin) {
      for (double x = r.lo; x <= r.hi; x += 1.0) tx.push_back(x);
    } else {
      const std::size_t n = task.test_points_per_range;
      for (std::size_t i = 0; i < n; ++i)
        tx.push_back(r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  for (double x : tx) ty.push_back(task.evaluate(x));
  return {Matrix::column(xs), Matrix::column(ys), Matrix::column(tx), Matrix::column(ty)};
}

}  // namespace snake
