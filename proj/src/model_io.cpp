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

#include "snake/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "snake/errors.hpp"

namespace snake {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'K', 'E'};
constexpr std::uint32_t kFlagCorrected = 1u << 0;
constexpr std::uint32_t kFlagPerNeuron = 1u << 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void raw(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  void magic() {
    need(4);
    if (std::memcmp(in_.data() + pos_, kMagic, 4) != 0)
      throw FormatError("not a model file: bad magic bytes");
    pos_ += 4;
  }
  bool done() const noexcept { return pos_ == in_.size(); }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n)
      throw FormatError("model file truncated at byte " + std::to_string(pos_));
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

Matrix read_matrix(Reader& r, std::size_t rows, std::size_t cols) {
  std::vector<double> data(rows * cols);
  for (double& v : data) v = r.f64();
  return Matrix(rows, cols, std::move(data));
}

}  // namespace

std::vector<std::uint8_t> save_model(const Mlp& net) {
  Writer w;
  w.raw(kMagic, 4);
  w.u32((kModelFormatMajor << 16) | kModelFormatMinor);
  w.u32(static_cast<std::uint32_t>(net.activation().tag()));
  w.f64(net.activation().param());
  std::uint32_t flags = 0;
  if (net.variance_corrected()) flags |= kFlagCorrected;
  if (net.per_neuron_a()) flags |= kFlagPerNeuron;
  w.u32(flags);
  const auto widths = net.widths();
  w.u32(static_cast<std::uint32_t>(net.num_layers()));
  for (std::size_t d : widths) w.u32(static_cast<std::uint32_t>(d));
  for (const auto& l : net.layers()) {
    for (double v : l.weight.data()) w.f64(v);
    for (double v : l.bias.data()) w.f64(v);
  }
  for (const auto& la : net.log_a()) {
    w.u32(static_cast<std::uint32_t>(la.size()));
    for (double v : la.data()) w.f64(v);
  }
  const auto& norm = net.normalizer();
  w.u8(norm ? 1 : 0);
  if (norm) {
    for (double v : norm->shift) w.f64(v);
    for (double v : norm->scale) w.f64(v);
  }
  return w.take();
}

Mlp load_model(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.magic();
  const std::uint32_t version = r.u32();
  const std::uint32_t major = version >> 16;
  const std::uint32_t minor = version & 0xffffu;
  if (major != kModelFormatMajor)
    throw FormatError("unsupported model format version " + std::to_string(major) + "." +
                      std::to_string(minor));
  const auto tag = static_cast<int>(r.u32());
  const double param = r.f64();
  const Activation act = Activation::from_tag(tag, param);
  const std::uint32_t flags = r.u32();
  const std::uint32_t h = r.u32();
  if (h == 0 || h > 4096) throw FormatError("implausible layer count " + std::to_string(h));
  std::vector<std::size_t> widths(h + 1);
  for (auto& d : widths) {
    d = r.u32();
    if (d == 0) throw FormatError("zero layer width");
  }
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t in = widths[i], out = widths[i + 1];
    if (r.remaining() / 8 < in * out + out) throw FormatError("model file truncated in layer data");
    Matrix weight = read_matrix(r, out, in);
    Matrix bias = read_matrix(r, 1, out);
    layers.push_back({std::move(weight), std::move(bias)});
  }
  try {
    Mlp net(std::move(layers), act, (flags & kFlagCorrected) != 0,
            (flags & kFlagPerNeuron) != 0);
    for (auto& la : net.log_a()) {
      const std::uint32_t n = r.u32();
      if (n != la.size()) throw FormatError("log-frequency count mismatch");
      for (double& v : la.data()) v = r.f64();
    }
    if (minor >= 1) {
      if (r.u8() != 0) {
        InputNormalizer norm;
        norm.shift.resize(widths[0]);
        norm.scale.resize(widths[0]);
        for (double& v : norm.shift) v = r.f64();
        for (double& v : norm.scale) v = r.f64();
        net.set_normalizer(std::move(norm));
      }
    }
    if (minor <= kModelFormatMinor && !r.done())
      throw FormatError("trailing bytes after model data");
    return net;
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid model: ") + e.what());
  }
}

void save_model_file(const Mlp& net, const std::filesystem::path& path) {
  const auto bytes = save_model(net);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw FormatError("failed writing " + path.string());
}

Mlp load_model_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return load_model(bytes);
}

}  // namespace snake
