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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace snake {

// x' = (x - shift) * scale.
struct AffineMap {
  double shift = 0.0;
  double scale = 1.0;
  double apply(double x) const { return (x - shift) * scale; }
  double invert(double y) const { return y / scale + shift; }
};

struct SeriesDataset {
  std::vector<double> timestamps;  // strictly increasing
  std::vector<double> values;      // finite
  // Maps timestamps onto [-1, 1] and values to zero mean, unit deviation.
  AffineMap time_map;
  AffineMap value_map;
  std::size_t dropped_missing = 0;
  std::size_t dropped_unparseable = 0;
};

enum class Resample { kNone, kWeeklyMean };

struct IngestOptions {
  // Header name, or a 0-based column index written as digits.
  std::string time_column = "0";
  std::string value_column = "1";
  Resample resample = Resample::kNone;
  char delimiter = ',';
};

// Time fields are plain numbers or ISO dates "YYYY-MM-DD" with an optional
// "THH:MM[:SS]" or " HH:MM[:SS]" part; dates become days since 1970-01-01.
// Blank lines are ignored. Rows with an empty, "NA", "NaN" or "null" field
// are dropped as missing. Other unreadable rows are dropped too, but more
// than 10% of them raises IngestionError quoting a few. Equal timestamps are
// merged by their mean. Weekly resampling averages calendar weeks starting
// on Monday and stamps each week with its Monday (in days).
SeriesDataset parse_series_csv(std::string_view text, const IngestOptions& options);
SeriesDataset ingest_csv(const std::string& path, const IngestOptions& options);

Resample parse_resample(std::string_view name);  // "none" | "weekly"

}  // namespace snake
