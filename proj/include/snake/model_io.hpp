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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "snake/mlp.hpp"

namespace snake {

// Binary model format, all integers and reals little-endian:
//
//   "SNKE"                      magic
//   u32 version                 (major << 16) | minor
//   u32 activation tag, f64 activation parameter
//   u32 flags                   bit 0: variance corrected, bit 1: per-neuron a
//   u32 h, u32 widths[h + 1]
//   per layer: f64 weight[out * in] (row-major), f64 bias[out]
//   learnable Snake only, per hidden layer: u32 n, f64 log_a[n]
//   since 1.1: u8 has_normalizer [, f64 shift[d_1], f64 scale[d_1]]
//
// Readers accept any minor version of the current major; fields added in a
// later minor default when absent.
inline constexpr std::uint32_t kModelFormatMajor = 1;
inline constexpr std::uint32_t kModelFormatMinor = 1;

std::vector<std::uint8_t> save_model(const Mlp& net);
Mlp load_model(std::span<const std::uint8_t> bytes);

void save_model_file(const Mlp& net, const std::filesystem::path& path);
Mlp load_model_file(const std::filesystem::path& path);

}  // namespace snake
