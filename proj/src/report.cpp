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

#include "snake/report.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

#include "snake/spectrum.hpp"

namespace snake {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json range_table(const std::vector<RangeMse>& r) {
  Json j = Json::object();
  for (const auto& m : r) j[m.name] = m.mse;
  return j;
}

Json summary_json(const ActivationSummary& s) {
  Json j;
  j["label"] = s.label;
  j["activation"] = s.activation.name();
  j["parameter"] = s.activation.param();
  j["diverged_runs"] = s.diverged;
  j["median_extrapolation_mse"] = s.median_extrapolation_mse;
  j["median_range_mse"] = range_table(s.median_range_mse);
  Json runs = Json::array();
  for (const auto& r : s.runs) {
    Json rj;
    rj["seed"] = r.seed;
    rj["diverged"] = r.diverged;
    if (r.diverged) {
      rj["diverged_step"] = r.diverged_step;
    } else {
      rj["train_mse"] = r.train_mse;
      rj["range_mse"] = range_table(r.range_mse);
    }
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);
  return j;
}

Json header(const char* kind) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = kind;
  return j;
}

}  // namespace

Json task_json(const SyntheticTask& task) {
  Json j;
  j["name"] = task.name;
  j["target"] = target_name(task.target);
  j["train_range"] = {task.train_lo, task.train_hi};
  if (task.has_gap()) j["gap"] = {task.gap_lo, task.gap_hi};
  j["reach"] = task.reach;
  j["samples"] = task.samples;
  j["noise_variance"] = task.noise_variance;
  j["seed"] = task.seed;
  if (task.target == TargetKind::kNoisySin)
    j["note"] = "feedforward regression of the noisy series; no recurrent baseline";
  return j;
}

Json experiment_config_json(const ExperimentConfig& cfg) {
  Json j;
  Json opt;
  if (const auto* a = std::get_if<AdamConfig>(&cfg.train.optimizer)) {
    opt = {{"name", "adam"}, {"lr", a->lr}, {"beta1", a->beta1}, {"beta2", a->beta2}, {"eps", a->eps}};
  } else {
    const auto& s = std::get<SgdConfig>(cfg.train.optimizer);
    opt = {{"name", "sgd"}, {"lr", s.lr}, {"momentum", s.momentum}, {"weight_decay", s.weight_decay}};
  }
  j["optimizer"] = std::move(opt);
  j["steps"] = cfg.train.steps;
  j["batch_size"] = cfg.train.batch_size;
  Json sched = Json::array();
  for (const auto& [step, lr] : cfg.train.schedule) sched.push_back({step, lr});
  j["schedule"] = std::move(sched);
  j["hidden"] = cfg.hidden;
  j["init"] = cfg.init ? cfg.init->name() : "auto";
  j["rescale_inputs"] = cfg.rescale_inputs;
  j["runs"] = cfg.runs;
  j["seed"] = cfg.seed;
  return j;
}

Json comparison_json(const ComparisonReport& rep, const ExperimentConfig& cfg) {
  Json j = header("comparison");
  j["task"] = task_json(rep.task);
  j["config"] = experiment_config_json(cfg);
  Json acts = Json::array();
  for (const auto& s : rep.activations) acts.push_back(summary_json(s));
  j["activations"] = std::move(acts);
  return j;
}

std::string curves_csv(const ComparisonReport& rep) {
  std::ostringstream out;
  out << "x";
  for (const auto& s : rep.activations)
    out << ',' << s.label << "_median," << s.label << "_p5," << s.label << "_p95";
  out << '\n';
  for (std::size_t i = 0; i < rep.curve_x.size(); ++i) {
    out << num(rep.curve_x[i]);
    for (const auto& s : rep.activations) {
      if (s.median.empty()) out << ",,,";
      else out << ',' << num(s.median[i]) << ',' << num(s.p5[i]) << ',' << num(s.p95[i]);
    }
    out << '\n';
  }
  return out.str();
}

Json sweep_json(const SweepReport& rep, const ExperimentConfig& cfg) {
  Json j = header("a_sweep");
  j["task"] = task_json(rep.task);
  j["config"] = experiment_config_json(cfg);
  j["fft_grid"] = {{"start", rep.grid.start}, {"spacing", rep.grid.spacing}, {"points", rep.grid.points}};
  if (rep.target_frequency) j["target_frequency"] = *rep.target_frequency;
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json ej;
    ej["a"] = e.a;
    ej["median_extrapolation_mse"] = e.summary.median_extrapolation_mse;
    ej["median_dominant_frequency"] = e.median_dominant_frequency;
    ej["dominant_frequency"] = e.dominant_frequency;
    ej["recovered_runs"] = e.recovered;
    ej["summary"] = summary_json(e.summary);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json noise_sweep_json(const NoiseSweepReport& rep, const ExperimentConfig& cfg) {
  Json j = header("noise_sweep");
  j["task"] = task_json(rep.task);
  j["config"] = experiment_config_json(cfg);
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json ej;
    ej["noise_variance"] = e.noise_variance;
    Json acts = Json::array();
    for (const auto& s : e.report.activations) acts.push_back(summary_json(s));
    ej["activations"] = std::move(acts);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

std::string noise_sweep_csv(const NoiseSweepReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "noise_variance,activation,median_extrapolation_mse,diverged_runs\n";
  for (const auto& e : rep.entries)
    for (const auto& s : e.report.activations)
      out << e.noise_variance << ',' << s.label << ',' << s.median_extrapolation_mse << ',' << s.diverged << '\n';
  return out.str();
}

std::string sweep_curves_csv(const SweepReport& rep) {
  ComparisonReport c;
  c.curve_x = rep.curve_x;
  for (const auto& e : rep.entries) {
    ActivationSummary s = e.summary;
    s.label = "a=" + num(e.a);
    c.activations.push_back(std::move(s));
  }
  return curves_csv(c);
}

Json trajectory_json(const SpectralTrajectory& tr, const ExperimentConfig& cfg) {
  Json j = header("spectral_trajectory");
  j["task"] = task_json(tr.task);
  j["config"] = experiment_config_json(cfg);
  j["seed"] = tr.seed;
  j["grid"] = {{"start", tr.grid.start}, {"spacing", tr.grid.spacing}, {"points", tr.grid.points}};
  j["threshold"] = tr.threshold;
  Json cps = Json::array();
  for (const auto& c : tr.checkpoints)
    cps.push_back({{"step", c.step},
                   {"train_mse", c.train_mse},
                   {"highest_active_frequency", c.highest_active_frequency}});
  j["checkpoints"] = std::move(cps);
  Json cr = Json::array();
  for (const auto& c : tr.crossings) {
    Json cj = {{"angular_frequency", c.angular_frequency}, {"bin", c.bin}};
    cj["step"] = c.step ? Json(*c.step) : Json(nullptr);
    cr.push_back(std::move(cj));
  }
  j["crossings"] = std::move(cr);
  return j;
}

std::string spectrum_csv(const SpectralTrajectory& tr) {
  std::ostringstream out;
  out << "checkpoint,frequency_bin,frequency,magnitude\n";
  for (const auto& c : tr.checkpoints)
    for (std::size_t k = 0; k < c.magnitude.size(); ++k)
      out << c.step << ',' << k << ',' << num(bin_frequency(k, tr.grid.points, tr.grid.spacing))
          << ',' << num(c.magnitude[k]) << '\n';
  return out.str();
}

Json extrapolation_json(const std::vector<RayRecord>& rays) {
  Json j = header("extrapolation");
  Json arr = Json::array();
  for (const auto& r : rays) {
    Json rj;
    rj["direction"] = r.report.direction;
    rj["class"] = to_string(r.cls);
    switch (r.cls) {
      case Asymptotics::kConstant:
        rj["limit"] = r.report.limit;
        rj["residual"] = r.report.constant_deviation;
        break;
      case Asymptotics::kPeriodicResidual:
        rj["slope"] = r.report.slope;
        rj["intercept"] = r.report.intercept;
        rj["residual"] = r.report.affine_residual;
        rj["periodic_amplitude"] = r.report.periodic_amplitude;
        rj["dominant_frequency"] = r.report.dominant_frequency;
        break;
      default:
        rj["slope"] = r.report.slope;
        rj["intercept"] = r.report.intercept;
        rj["residual"] = r.report.affine_residual;
        break;
    }
    rj["z_max"] = r.report.z.back();
    arr.push_back(std::move(rj));
  }
  j["rays"] = std::move(arr);
  return j;
}

Json fourier_json(const FourierSpec& spec, double a, double max_net_vs_partial,
                  double max_net_vs_target) {
  Json j = header("fourier");
  j["half_period"] = spec.half_period;
  j["order"] = spec.order();
  j["a"] = a;
  j["mean"] = spec.mean;
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  j["hidden_width"] = 4 * spec.order() + (spec.mean != 0.0 ? 2 : 0);
  j["max_abs_net_minus_partial_sum"] = max_net_vs_partial;
  j["max_abs_net_minus_target"] = max_net_vs_target;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace snake
