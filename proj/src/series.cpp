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

#include "snake/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "snake/errors.hpp"

namespace snake {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::string(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::string(trim(cur)));
  return out;
}

bool is_missing(std::string_view f) {
  const std::string l = lower(trim(f));
  return l.empty() || l == "na" || l == "nan" || l == "null";
}

std::optional<double> parse_number(std::string_view f) {
  f = trim(f);
  if (!f.empty() && f.front() == '+') f.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

std::optional<double> parse_date(std::string_view f) {
  f = trim(f);
  if (f.size() < 10 || f[4] != '-' || f[7] != '-') return std::nullopt;
  const auto y = digits(f, 0, 4), mo = digits(f, 5, 2), d = digits(f, 8, 2);
  if (!y || !mo || !d) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  double days = static_cast<double>(sys_days(ymd).time_since_epoch().count());
  if (f.size() == 10) return days;
  if (f[10] != 'T' && f[10] != ' ') return std::nullopt;
  const auto h = digits(f, 11, 2);
  if (!h || f.size() < 16 || f[13] != ':') return std::nullopt;
  const auto mi = digits(f, 14, 2);
  if (!mi) return std::nullopt;
  int sec = 0;
  if (f.size() > 16) {
    if (f.size() != 19 || f[16] != ':') return std::nullopt;
    const auto s = digits(f, 17, 2);
    if (!s) return std::nullopt;
    sec = *s;
  }
  if (*h > 23 || *mi > 59 || sec > 60) return std::nullopt;
  return days + (*h * 3600.0 + *mi * 60.0 + sec) / 86400.0;
}

std::optional<double> parse_time(std::string_view f) {
  if (auto v = parse_date(f)) return v;
  return parse_number(f);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

}  // namespace

Resample parse_resample(std::string_view name) {
  const std::string l = lower(name);
  if (l == "none") return Resample::kNone;
  if (l == "weekly") return Resample::kWeeklyMean;
  throw ContractError("unknown resample rule '" + std::string(name) + "'");
}

SeriesDataset parse_series_csv(std::string_view text, const IngestOptions& options) {
  std::vector<std::pair<std::size_t, std::string>> lines;  // 1-based line number
  {
    std::size_t start = 0, number = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!trim(line).empty()) lines.emplace_back(number, std::string(line));
      start = end + 1;
      ++number;
    }
  }
  if (lines.empty()) throw IngestionError("CSV has no rows");

  // Resolve columns. A first row with any non-numeric field among the
  // selected ones is a header.
  const auto first = split_fields(lines.front().second, options.delimiter);
  std::size_t tcol = 0, vcol = 0;
  bool header = false;
  const bool named = !all_digits(options.time_column) || !all_digits(options.value_column);
  if (named) {
    header = true;
    const auto t = all_digits(options.time_column) ? std::optional<std::size_t>(std::stoul(options.time_column))
                                                   : find_column(first, options.time_column);
    const auto v = all_digits(options.value_column) ? std::optional<std::size_t>(std::stoul(options.value_column))
                                                    : find_column(first, options.value_column);
    if (!t || !v) throw IngestionError("CSV header lacks the requested columns");
    tcol = *t;
    vcol = *v;
  } else {
    tcol = std::stoul(options.time_column);
    vcol = std::stoul(options.value_column);
    if (tcol < first.size() && vcol < first.size())
      header = (!parse_time(first[tcol]) && !is_missing(first[tcol])) ||
               (!parse_number(first[vcol]) && !is_missing(first[vcol]));
  }

  SeriesDataset ds;
  std::vector<std::pair<double, double>> rows;
  std::vector<std::string> bad;
  std::size_t data_rows = 0;
  for (std::size_t i = header ? 1 : 0; i < lines.size(); ++i) {
    ++data_rows;
    const auto fields = split_fields(lines[i].second, options.delimiter);
    const auto note_bad = [&] {
      ++ds.dropped_unparseable;
      if (bad.size() < 3) bad.push_back("line " + std::to_string(lines[i].first) + ": " + lines[i].second);
    };
    if (std::max(tcol, vcol) >= fields.size()) {
      note_bad();
      continue;
    }
    if (is_missing(fields[tcol]) || is_missing(fields[vcol])) {
      ++ds.dropped_missing;
      continue;
    }
    const auto t = parse_time(fields[tcol]);
    const auto v = parse_number(fields[vcol]);
    if (!t || !v) {
      note_bad();
      continue;
    }
    rows.emplace_back(*t, *v);
  }
  if (data_rows > 0 && 10 * ds.dropped_unparseable > data_rows) {
    std::string msg = std::to_string(ds.dropped_unparseable) + " of " + std::to_string(data_rows) +
                      " rows are unparseable (limit 10%); e.g.";
    for (const auto& b : bad) msg += "\n  " + b;
    throw IngestionError(msg);
  }
  if (rows.empty()) throw IngestionError("CSV has no usable rows");

  // Group equal timestamps (or weeks) and average.
  std::map<double, std::pair<double, std::size_t>> groups;
  for (const auto& [t, v] : rows) {
    double key = t;
    if (options.resample == Resample::kWeeklyMean) {
      // 1970-01-01 is a Thursday; day -3 is a Monday.
      key = 7.0 * std::floor((std::floor(t) + 3.0) / 7.0) - 3.0;
    }
    auto& g = groups[key];
    g.first += v;
    g.second += 1;
  }
  for (const auto& [t, g] : groups) {
    ds.timestamps.push_back(t);
    ds.values.push_back(g.first / static_cast<double>(g.second));
  }

  const double t0 = ds.timestamps.front(), t1 = ds.timestamps.back();
  ds.time_map.shift = 0.5 * (t0 + t1);
  ds.time_map.scale = t1 > t0 ? 2.0 / (t1 - t0) : 1.0;
  double mean = 0.0;
  for (double v : ds.values) mean += v;
  mean /= static_cast<double>(ds.values.size());
  double var = 0.0;
  for (double v : ds.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(ds.values.size());
  ds.value_map.shift = mean;
  ds.value_map.scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  return ds;
}

SeriesDataset ingest_csv(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_series_csv(buf.str(), options);
}

}  // namespace snake
