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
#include <filesystem>

#include <gtest/gtest.h>

#include "snake/errors.hpp"

namespace snake {
namespace {

Mlp sample_net(const Activation& act, bool corrected = false, bool per_neuron = false) {
  MlpConfig c;
  c.widths = {2, 5, 3, 1};
  c.activation = act;
  c.init = corrected ? InitScheme::snake_corrected() : InitScheme::snake_uniform();
  c.per_neuron_a = per_neuron;
  c.seed = 17;
  Mlp net(c);
  for (auto& l : net.layers())
    for (double& b : l.bias.data()) b = 0.125;
  return net;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

TEST(ModelIoTest, RoundTripIsExact) {
  for (const auto& net :
       {sample_net(Activation::relu()), sample_net(Activation::snake(3.5), true),
        sample_net(Activation::snake_learnable(0.7), false, true), sample_net(Activation::leaky_relu(0.2))}) {
    const Mlp back = load_model(save_model(net));
    EXPECT_EQ(back, net);
    const Matrix x{{0.3, -1.2}, {4.0, 2.0}};
    EXPECT_EQ(back.forward(x), net.forward(x));
  }
}

TEST(ModelIoTest, NormalizerSurvives) {
  Mlp net = sample_net(Activation::tanh());
  net.set_normalizer(InputNormalizer{{1.0, 2.0}, {0.5, 0.25}});
  EXPECT_EQ(load_model(save_model(net)).normalizer(), net.normalizer());
}

TEST(ModelIoTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "snake_model_io_test.snke";
  const Mlp net = sample_net(Activation::swish());
  save_model_file(net, path);
  EXPECT_EQ(load_model_file(path), net);
  std::filesystem::remove(path);
  EXPECT_THROW(load_model_file(path), FormatError);
}

TEST(ModelIoTest, RejectsCorruption) {
  const auto bytes = save_model(sample_net(Activation::snake(1.0)));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(load_model(bad_magic), FormatError);

  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1})
    EXPECT_THROW(load_model(std::span(bytes).first(cut)), FormatError) << cut;

  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(load_model(trailing), FormatError);

  auto major = bytes;
  major[6] = 2;  // version high half
  EXPECT_THROW(load_model(major), FormatError);

  auto tag = bytes;
  tag[8] = 99;
  EXPECT_THROW(load_model(tag), FormatError);
}

TEST(ModelIoTest, ReadsVersionOneZero) {
  // 1 -> 2 -> 1 Snake(a = 2) net without the normalizer block.
  std::vector<std::uint8_t> b = {'S', 'N', 'K', 'E'};
  put_u32(b, 1u << 16);
  put_u32(b, static_cast<std::uint32_t>(Activation::snake(2.0).tag()));
  put_f64(b, 2.0);
  put_u32(b, 0);
  put_u32(b, 2);
  for (std::uint32_t w : {1u, 2u, 1u}) put_u32(b, w);
  for (double v : {0.5, -0.5, 0.0, 0.25, 1.0, 2.0, 0.75}) put_f64(b, v);
  const Mlp net = load_model(b);
  EXPECT_EQ(net.widths(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_FALSE(net.normalizer().has_value());
  const Mlp expected({{Matrix{{0.5}, {-0.5}}, Matrix{{0.0, 0.25}}}, {Matrix{{1.0, 2.0}}, Matrix{{0.75}}}},
                     Activation::snake(2.0));
  EXPECT_EQ(net, expected);
  // A newer minor of the same major is accepted; it carries the 1.1 fields.
  b[4] = 7;
  b.push_back(0);
  EXPECT_EQ(load_model(b), expected);
}

}  // namespace
}  // namespace snake
