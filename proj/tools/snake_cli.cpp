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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snake/errors.hpp"
#include "snake/experiments.hpp"
#include "snake/extrapolation.hpp"
#include "snake/fourier.hpp"
#include "snake/model_io.hpp"
#include "snake/random.hpp"
#include "snake/report.hpp"
#include "snake/series.hpp"
#include "snake/tasks.hpp"
#include "snake/train.hpp"

namespace fs = std::filesystem;
using namespace snake;

namespace {

using std::numbers::pi;

struct Common {
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string init = "auto";
  std::string activation = "snake";
  double param = std::nan("");
  bool rescale = true;
  std::size_t runs = 21;
};

struct TaskOpts {
  std::string name = "sin";
  std::size_t samples = 0;
  double noise = -1.0;
};

struct TrainOpts {
  std::string optimizer = "adam";
  double lr = 1e-3;
  double momentum = 0.0;
  double weight_decay = 0.0;
  std::size_t steps = 1000;
  std::size_t batch = 0;
  std::vector<std::size_t> hidden = {512};
  std::size_t threads = 0;
  CLI::Option* hidden_option = nullptr;
};

void add_common(CLI::App* c, Common& o, bool with_activation, bool with_runs) {
  c->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  c->add_option("--out", o.out, "Output directory")->capture_default_str();
  c->add_option("--init", o.init, "auto | kaiming | snake | snake_corrected")->capture_default_str();
  c->add_flag("--rescale-inputs,!--no-rescale-inputs", o.rescale,
              "Map the training range onto [-1, 1] inside the network");
  if (with_activation) {
    c->add_option("--activation", o.activation, "Activation name")->capture_default_str();
    c->add_option("--a,--param", o.param, "Snake frequency a or LeakyReLU slope");
  }
  if (with_runs) c->add_option("--runs", o.runs, "Independent runs")->capture_default_str();
}

void add_task(CLI::App* c, TaskOpts& t) {
  c->add_option("--task", t.name, "linear | tanh | sin | x2 | rect | sin_mix | cos_mix | noisy_sin")
      ->capture_default_str();
  c->add_option("--samples", t.samples, "Training samples (default from the task)");
  c->add_option("--noise-variance", t.noise, "Noise variance of training targets");
}

void add_train(CLI::App* c, TrainOpts& t) {
  c->add_option("--optimizer", t.optimizer, "adam | sgd")->capture_default_str();
  c->add_option("--lr", t.lr, "Learning rate")->capture_default_str();
  c->add_option("--momentum", t.momentum, "SGD momentum")->capture_default_str();
  c->add_option("--weight-decay", t.weight_decay, "SGD weight decay")->capture_default_str();
  c->add_option("--steps", t.steps, "Optimizer steps")->capture_default_str();
  c->add_option("--batch-size", t.batch, "Mini-batch size, 0 = full batch")->capture_default_str();
  t.hidden_option = c->add_option("--hidden", t.hidden, "Hidden widths (series CSVs default to 100,100)")
                        ->delimiter(',')
                        ->capture_default_str();
  c->add_option("--threads", t.threads, "Worker threads, 0 = all cores")->capture_default_str();
}

Activation make_activation(const std::string& name, double param) {
  return std::isnan(param) ? Activation::parse(name) : Activation::parse(name, param);
}

// "snake:10" or "relu".
Activation activation_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return Activation::parse(spec);
  return Activation::parse(spec.substr(0, colon), std::stod(spec.substr(colon + 1)));
}

SyntheticTask make_task(const TaskOpts& t, std::uint64_t seed) {
  SyntheticTask task = SyntheticTask::preset(parse_target(t.name));
  if (t.samples > 0) {
    task.samples = t.samples;
    if (task.target == TargetKind::kNoisySin) task.train_hi = task.train_lo + static_cast<double>(t.samples) - 1.0;
  }
  if (t.noise >= 0.0) task.noise_variance = t.noise;
  task.seed = seed;
  return task;
}

ExperimentConfig make_config(const Common& c, const TrainOpts& t) {
  ExperimentConfig cfg;
  if (t.optimizer == "adam") {
    cfg.train.optimizer = AdamConfig{t.lr};
  } else if (t.optimizer == "sgd") {
    cfg.train.optimizer = SgdConfig{t.lr, t.momentum, t.weight_decay};
  } else {
    throw ContractError("unknown optimizer '" + t.optimizer + "'");
  }
  cfg.train.steps = t.steps;
  cfg.train.batch_size = t.batch;
  cfg.hidden = t.hidden;
  if (c.init != "auto") cfg.init = InitScheme::parse(c.init);
  cfg.rescale_inputs = c.rescale;
  cfg.runs = c.runs;
  cfg.seed = c.seed;
  cfg.threads = t.threads;
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

std::string xy_csv(const Matrix& x, const Matrix& y) {
  std::ostringstream out;
  out.precision(17);
  out << "x,y\n";
  for (std::size_t i = 0; i < x.rows(); ++i) out << x(i, 0) << ',' << y(i, 0) << '\n';
  return out.str();
}

double parse_zmax(const std::string& s) {
  const auto caret = s.find('^');
  if (caret == std::string::npos) return std::stod(s);
  return std::pow(std::stod(s.substr(0, caret)), std::stod(s.substr(caret + 1)));
}

// Periodic targets for verify-fourier on [-L, L]; jumps take the midpoint.
struct FourierTarget {
  double centre = 0.0;
  double half_period = pi;
  std::function<double(double)> f;  // defined on all of R
};

FourierTarget fourier_target(const std::string& name, const std::string& csv) {
  FourierTarget t;
  if (name == "square") {
    t.f = [](double x) {
      const double r = x - 2.0 * pi * std::round(x / (2.0 * pi));
      if (std::abs(r) < 1e-12 || std::abs(std::abs(r) - pi) < 1e-12) return 0.0;
      return r > 0.0 ? 1.0 : -1.0;
    };
  } else if (name == "saw") {
    t.f = [](double x) {
      const double r = x - 2.0 * pi * std::round(x / (2.0 * pi));
      return std::abs(std::abs(r) - pi) < 1e-12 ? 0.0 : r;
    };
  } else if (name == "sin_mix") {
    t.f = [](double x) { return std::sin(x) + std::sin(4.0 * x) / 4.0; };
  } else if (name == "custom-csv") {
    if (csv.empty()) throw ContractError("--target custom-csv needs --csv");
    const SeriesDataset ds = ingest_csv(csv, IngestOptions{});
    if (ds.timestamps.size() < 2) throw IngestionError("custom target needs at least two rows");
    const auto xs = ds.timestamps, ys = ds.values;
    const double lo = xs.front(), hi = xs.back();
    t.centre = 0.5 * (lo + hi);
    t.half_period = 0.5 * (hi - lo);
    t.f = [xs, ys, lo, hi](double x) {
      const double span = hi - lo;
      double r = std::fmod(x - lo, span);
      if (r < 0.0) r += span;
      r += lo;
      const auto it = std::upper_bound(xs.begin(), xs.end(), r);
      if (it == xs.begin()) return ys.front();
      if (it == xs.end()) return ys.back();
      const std::size_t k = static_cast<std::size_t>(it - xs.begin());
      const double w = (r - xs[k - 1]) / (xs[k] - xs[k - 1]);
      return ys[k - 1] + w * (ys[k] - ys[k - 1]);
    };
  } else {
    throw ContractError("unknown fourier target '" + name + "'");
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snake activation toolkit: training, extrapolation probes and Fourier construction"};
  app.require_subcommand(1);
  std::function<void()> run;

  // generate
  Common gc;
  TaskOpts gt;
  auto* gen = app.add_subcommand("generate", "Write train.csv and test.csv for a synthetic task");
  add_task(gen, gt);
  gen->add_option("--seed", gc.seed, "Data seed")->capture_default_str();
  gen->add_option("--out", gc.out, "Output directory")->capture_default_str();
  gen->callback([&] {
    run = [&] {
      const Dataset d = generate(make_task(gt, gc.seed));
      write_file(fs::path(gc.out) / "train.csv", xy_csv(d.x_train, d.y_train));
      write_file(fs::path(gc.out) / "test.csv", xy_csv(d.x_test, d.y_test));
    };
  });

  // train
  Common tc;
  TaskOpts tt;
  TrainOpts to;
  std::string model_path, train_csv;
  auto* tr = app.add_subcommand("train", "Train one network and save it");
  add_common(tr, tc, true, false);
  add_task(tr, tt);
  add_train(tr, to);
  tr->add_option("--train-csv", train_csv, "Train on x,y rows from this CSV instead of --task");
  tr->add_option("--model", model_path, "Model file (default OUT/model.snke)");
  tr->callback([&] {
    run = [&] {
      ExperimentConfig cfg = make_config(tc, to);
      if (!train_csv.empty() && to.hidden_option->count() == 0) cfg.hidden = {100, 100};
      const Activation act = make_activation(tc.activation, tc.param);
      SyntheticTask task = make_task(tt, tc.seed);
      Matrix x, y;
      if (!train_csv.empty()) {
        const SeriesDataset ds = ingest_csv(train_csv, IngestOptions{});
        x = Matrix::column(ds.timestamps);
        y = Matrix::column(ds.values);
        task.train_lo = ds.timestamps.front();
        task.train_hi = ds.timestamps.back();
        task.gap_lo = task.gap_hi = 0.0;
      } else {
        const Dataset d = generate(task);
        x = d.x_train;
        y = d.y_train;
      }
      TrainConfig t = cfg.train;
      t.seed = tc.seed;
      const TrainResult r = train(make_network(task, act, cfg, tc.seed), x, y, t);
      const fs::path out(tc.out);
      const fs::path mp = model_path.empty() ? out / "model.snke" : fs::path(model_path);
      if (mp.has_parent_path()) fs::create_directories(mp.parent_path());
      save_model_file(r.net, mp);
      std::cout << "wrote " << mp.string() << "\n";
      write_file(out / "loss.csv", loss_trace_csv(r.loss));
      Json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "train";
      j["activation"] = act.name();
      j["parameter"] = act.param();
      j["config"] = experiment_config_json(cfg);
      j["train_mse"] = evaluate_mse(r.net, x, y);
      if (train_csv.empty()) {
        Json ranges = Json::object();
        for (const auto& m : extrapolation_mse(r.net, [&](double v) { return task.evaluate(v); },
                                               task.test_ranges(), task.test_points_per_range))
          ranges[m.name] = m.mse;
        j["task"] = task_json(task);
        j["range_mse"] = std::move(ranges);
      }
      write_file(out / "report.json", dump(j));
    };
  });

  // compare
  Common cc;
  TaskOpts ct;
  TrainOpts co;
  std::vector<std::string> act_list = {"relu", "tanh", "snake:10"};
  auto* cmp = app.add_subcommand("compare", "Compare activations over independent runs");
  add_common(cmp, cc, false, true);
  add_task(cmp, ct);
  add_train(cmp, co);
  cmp->add_option("--activations", act_list, "Comma list, NAME or NAME:PARAM")
      ->delimiter(',')
      ->capture_default_str();
  cmp->callback([&] {
    run = [&] {
      const ExperimentConfig cfg = make_config(cc, co);
      std::vector<Activation> acts;
      for (const auto& s : act_list) acts.push_back(activation_spec(s));
      const auto rep = run_comparison(make_task(ct, cc.seed), acts, cfg);
      write_file(fs::path(cc.out) / "report.json", dump(comparison_json(rep, cfg)));
      write_file(fs::path(cc.out) / "curves.csv", curves_csv(rep));
      for (const auto& s : rep.activations)
        std::printf("%-16s median extrapolation MSE %.6g (%zu diverged)\n", s.label.c_str(),
                    s.median_extrapolation_mse, s.diverged);
    };
  });

  // sweep-a
  Common sc;
  TaskOpts st;
  TrainOpts so;
  std::vector<double> a_values = {1.0, 16.0};
  auto* sw = app.add_subcommand("sweep-a", "Sweep the Snake frequency a");
  add_common(sw, sc, false, true);
  add_task(sw, st);
  add_train(sw, so);
  sw->add_option("--a-values", a_values, "Comma list of a")->delimiter(',')->capture_default_str();
  sw->callback([&] {
    run = [&] {
      const ExperimentConfig cfg = make_config(sc, so);
      const auto rep = a_sweep(make_task(st, sc.seed), a_values, cfg);
      write_file(fs::path(sc.out) / "report.json", dump(sweep_json(rep, cfg)));
      write_file(fs::path(sc.out) / "curves.csv", sweep_curves_csv(rep));
      for (const auto& e : rep.entries)
        std::printf("a=%-8g median extrapolation MSE %.6g, dominant frequency %.6g\n", e.a,
                    e.summary.median_extrapolation_mse, e.median_dominant_frequency);
    };
  });

  // noise-sweep
  Common nc;
  TaskOpts nt;
  TrainOpts no;
  nt.name = "noisy_sin";
  std::vector<double> noise_values = {0.0, 0.01, 0.04, 0.1, 0.25, 0.5, 1.0};
  std::vector<std::string> noise_acts = {"snake:1", "relu", "tanh"};
  auto* ns = app.add_subcommand("noise-sweep", "Repeat a comparison over training-noise variances");
  add_common(ns, nc, false, true);
  add_task(ns, nt);
  add_train(ns, no);
  ns->add_option("--noise-values", noise_values, "Comma list of noise variances")
      ->delimiter(',')
      ->capture_default_str();
  ns->add_option("--activations", noise_acts, "Comma list, NAME or NAME:PARAM")
      ->delimiter(',')
      ->capture_default_str();
  ns->callback([&] {
    run = [&] {
      const ExperimentConfig cfg = make_config(nc, no);
      std::vector<Activation> acts;
      for (const auto& a : noise_acts) acts.push_back(activation_spec(a));
      const auto rep = noise_sweep(make_task(nt, nc.seed), acts, noise_values, cfg);
      write_file(fs::path(nc.out) / "report.json", dump(noise_sweep_json(rep, cfg)));
      write_file(fs::path(nc.out) / "noise.csv", noise_sweep_csv(rep));
      for (const auto& e : rep.entries)
        for (const auto& a : e.report.activations)
          std::printf("noise %-6g %-16s median extrapolation MSE %.6g\n", e.noise_variance, a.label.c_str(),
                      a.median_extrapolation_mse);
    };
  });

  // spectrum
  Common pc;
  TaskOpts pt;
  TrainOpts po;
  std::size_t stride = 10;
  pt.name = "sin_mix";
  auto* sp = app.add_subcommand("spectrum", "Record the output spectrum during training");
  add_common(sp, pc, true, false);
  add_task(sp, pt);
  add_train(sp, po);
  sp->add_option("--stride", stride, "Checkpoint every N steps")->capture_default_str();
  sp->callback([&] {
    run = [&] {
      const ExperimentConfig cfg = make_config(pc, po);
      const Activation act = make_activation(pc.activation, pc.param);
      const auto trj = spectral_trajectory(make_task(pt, pc.seed), act, cfg, stride, pc.seed);
      write_file(fs::path(pc.out) / "report.json", dump(trajectory_json(trj, cfg)));
      write_file(fs::path(pc.out) / "spectrum.csv", spectrum_csv(trj));
    };
  });

  // ingest
  std::string csv_path, out_dir = ".";
  IngestOptions io;
  std::string resample = "none";
  auto* ing = app.add_subcommand("ingest", "Read a time series CSV");
  ing->add_option("--csv", csv_path, "Input CSV")->required();
  ing->add_option("--time-column", io.time_column, "Header name or 0-based index")->capture_default_str();
  ing->add_option("--value-column", io.value_column, "Header name or 0-based index")->capture_default_str();
  ing->add_option("--resample", resample, "none | weekly")->capture_default_str();
  ing->add_option("--out", out_dir, "Output directory")->capture_default_str();
  ing->callback([&] {
    run = [&] {
      io.resample = parse_resample(resample);
      const SeriesDataset ds = ingest_csv(csv_path, io);
      std::ostringstream csv;
      csv.precision(17);
      csv << "t,value,t_normalized,value_normalized\n";
      for (std::size_t i = 0; i < ds.timestamps.size(); ++i)
        csv << ds.timestamps[i] << ',' << ds.values[i] << ',' << ds.time_map.apply(ds.timestamps[i])
            << ',' << ds.value_map.apply(ds.values[i]) << '\n';
      write_file(fs::path(out_dir) / "series.csv", csv.str());
      Json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "ingest";
      j["rows"] = ds.timestamps.size();
      j["dropped_missing"] = ds.dropped_missing;
      j["dropped_unparseable"] = ds.dropped_unparseable;
      j["resample"] = resample;
      j["time_map"] = {{"shift", ds.time_map.shift}, {"scale", ds.time_map.scale}};
      j["value_map"] = {{"shift", ds.value_map.shift}, {"scale", ds.value_map.scale}};
      write_file(fs::path(out_dir) / "report.json", dump(j));
    };
  });

  // extrapolate
  std::string ex_model, ex_report = "extrapolation.json", zmax_text = "2^30";
  std::size_t rays = 20;
  std::uint64_t ex_seed = 0;
  auto* ex = app.add_subcommand("extrapolate", "Probe a saved model along random rays");
  ex->add_option("--model", ex_model, "Model file")->required();
  ex->add_option("--rays", rays, "Number of random directions")->capture_default_str();
  ex->add_option("--zmax", zmax_text, "Largest probe scalar, e.g. 2^30")->capture_default_str();
  ex->add_option("--report", ex_report, "Report JSON path")->capture_default_str();
  ex->add_option("--seed", ex_seed, "Direction seed")->capture_default_str();
  ex->callback([&] {
    run = [&] {
      const Mlp net = load_model_file(ex_model);
      const double zmax = parse_zmax(zmax_text);
      if (!(zmax >= 128.0)) throw ContractError("--zmax must be at least 2^7 (8 grid points)");
      const auto grid = geometric_grid(2.0, 0, static_cast<int>(std::floor(std::log2(zmax) + 1e-9)));
      std::vector<RayRecord> recs;
      for (std::size_t r = 0; r < rays; ++r) {
        RayRecord rec;
        const auto u = net.input_dim() == 1
                           ? std::vector<double>{r % 2 == 0 ? 1.0 : -1.0}
                           : random_direction(net.input_dim(), Rng(ex_seed).split(r).next_u64());
        rec.report = probe_ray(net, u, grid);
        rec.cls = classify_asymptotics(rec.report);
        std::printf("ray %zu: %s\n", r, to_string(rec.cls).c_str());
        recs.push_back(std::move(rec));
      }
      write_file(ex_report, dump(extrapolation_json(recs)));
    };
  });

  // verify-fourier
  std::string fv_target = "square", fv_csv, fv_report, fv_out = ".";
  std::size_t fv_order = 16, fv_points = 0;
  double fv_a = 1.0;
  auto* fv = app.add_subcommand("verify-fourier", "Build a Snake net equal to a Fourier partial sum");
  fv->add_option("--target", fv_target, "square | saw | sin_mix | custom-csv")->capture_default_str();
  fv->add_option("--csv", fv_csv, "x,y samples of one period for custom-csv");
  fv->add_option("--order", fv_order, "Fourier order m")->capture_default_str();
  fv->add_option("--a", fv_a, "Snake frequency")->capture_default_str();
  fv->add_option("--points", fv_points, "Quadrature subintervals (default max(64 m, 4096))");
  fv->add_option("--report", fv_report, "Report JSON path (default OUT/fourier.json)");
  fv->add_option("--out", fv_out, "Output directory")->capture_default_str();
  fv->callback([&] {
    run = [&] {
      const FourierTarget t = fourier_target(fv_target, fv_csv);
      const auto local = [&](double x) { return t.f(x + t.centre); };
      const std::size_t points = fv_points ? fv_points : std::max<std::size_t>(64 * fv_order, 4096);
      const FourierSpec spec = fourier_coefficients(local, t.half_period, fv_order, points);
      Mlp net = build_fourier_net(spec, fv_a);
      net.set_normalizer(InputNormalizer{{t.centre}, {1.0}});
      const std::size_t n = 6001;
      std::vector<double> xs(n);
      const double lo = t.centre - 3.0 * t.half_period, hi = t.centre + 3.0 * t.half_period;
      for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
      const Matrix y = net.forward(Matrix::column(xs));
      std::ostringstream csv;
      csv.precision(17);
      csv << "x,net,partial_sum,target\n";
      double vs_partial = 0.0, vs_target = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ps = spec.partial_sum(xs[i] - t.centre);
        vs_partial = std::max(vs_partial, std::abs(y(i, 0) - ps));
        vs_target = std::max(vs_target, std::abs(y(i, 0) - t.f(xs[i])));
        csv << xs[i] << ',' << y(i, 0) << ',' << ps << ',' << t.f(xs[i]) << '\n';
      }
      write_file(fs::path(fv_out) / "fourier.csv", csv.str());
      write_file(fv_report.empty() ? fs::path(fv_out) / "fourier.json" : fs::path(fv_report), dump(fourier_json(spec, fv_a, vs_partial, vs_target)));
      std::printf("max |net - partial sum| = %.3g, max |net - target| = %.3g\n", vs_partial, vs_target);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (run) run();
  } catch (const snake::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
