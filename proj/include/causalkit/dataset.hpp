// Copyright 2026 The causalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "causalkit/errors.hpp"
#include "causalkit/rng.hpp"
#include "causalkit/stats.hpp"

namespace causalkit {

/// Tabular data as p named variables with n samples each.
struct DataMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[variable][sample]

  std::size_t p() const { return values.size(); }
  std::size_t n() const { return values.empty() ? 0 : values.front().size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    return std::nullopt;
  }

  const std::vector<double>& column(const std::string& name) const {
    const auto idx = index_of(name);
    if (!idx) throw UnknownVariableError(name);
    return values[*idx];
  }
};

/// How missing values are encoded in a CSV file. A row is dropped when any
/// cell of the row matches a missing token, or when a cell in one of the
/// named columns is zero.
struct MissingPolicy {
  std::vector<std::string> missing_tokens;
  std::vector<std::string> zero_as_missing_columns;
};

/// Generator settings for the three-variable synthetic benchmark:
///   x0 = e0,  x1 = b10*x0 + e1,  x2 = b21*x1 + b20*x0 + e2
/// with errors drawn i.i.d. from Laplace(mu, lambda).
struct SyntheticSpec {
  std::size_t n = 100;
  std::uint64_t seed = 0;
  double b10 = 0.3;
  double b21 = 0.3;
  double b20 = 0.3;
  double laplace_mu = 0.0;
  double laplace_lambda = 1.0;

  void validate() const {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(laplace_lambda > 0.0))
      throw ValidationError("laplace_lambda must be positive");
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // Trim surrounding whitespace and CR from CRLF files.
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? std::string{}
                        : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::optional<double> parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace detail

/// Loads the selected columns of a headered CSV file, dropping every row
/// that contains a missing value anywhere in the row according to `policy`.
inline DataMatrix load_csv(const std::filesystem::path& path,
                           const MissingPolicy& policy,
                           const std::vector<std::string>& selected) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open file: " + path.string());

  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw HeaderMissingError("missing header row: " + path.string());
  const std::vector<std::string> header = detail::split_csv_line(line);
  if (header.empty() ||
      std::all_of(header.begin(), header.end(),
                  [](const std::string& h) { return h.empty(); }))
    throw HeaderMissingError("missing header row: " + path.string());

  auto header_index = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UnknownVariableError(name);
    return static_cast<std::size_t>(it - header.begin());
  };

  std::vector<std::size_t> selected_idx;
  selected_idx.reserve(selected.size());
  for (const auto& name : selected) selected_idx.push_back(header_index(name));

  std::vector<bool> zero_missing(header.size(), false);
  for (const auto& name : policy.zero_as_missing_columns)
    zero_missing[header_index(name)] = true;

  DataMatrix dm;
  dm.names = selected;
  dm.values.assign(selected.size(), {});

  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw DataError("row " + std::to_string(row_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));

    bool missing = false;
    for (std::size_t c = 0; c < cells.size() && !missing; ++c) {
      for (const auto& token : policy.missing_tokens) {
        if (cells[c] == token) {
          missing = true;
          break;
        }
      }
      if (!missing && zero_missing[c]) {
        const auto value = detail::parse_double(cells[c]);
        if (value && *value == 0.0) missing = true;
      }
    }
    if (missing) continue;

    for (std::size_t v = 0; v < selected_idx.size(); ++v) {
      const std::string& cell = cells[selected_idx[v]];
      const auto value = detail::parse_double(cell);
      if (!value || !std::isfinite(*value))
        throw DataError("row " + std::to_string(row_number) +
                        ", column '" + selected[v] +
                        "': cannot parse '" + cell + "' as a number");
      dm.values[v].push_back(*value);
    }
  }

  if (dm.n() == 0)
    throw NoRowsRemainingError("no rows remain after dropping missing values");
  return dm;
}

/// Writes samples as rows, one header line, shortest round-trip numbers.
inline void write_csv(const DataMatrix& dm, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  for (std::size_t v = 0; v < dm.p(); ++v) {
    if (v) out << ',';
    out << dm.names[v];
  }
  out << '\n';
  for (std::size_t s = 0; s < dm.n(); ++s) {
    for (std::size_t v = 0; v < dm.p(); ++v) {
      if (v) out << ',';
      out << detail::format_double(dm.values[v][s]);
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed: " + path.string());
}

/// Draws k samples uniformly without replacement, keeping the retained
/// samples in their original order. Deterministic for a fixed seed.
inline DataMatrix subsample(const DataMatrix& dm, std::size_t k,
                            std::uint64_t seed) {
  if (k < 1) throw ValidationError("subsample size must be >= 1");
  if (k > dm.n())
    throw KTooLargeError("subsample size " + std::to_string(k) +
                         " exceeds sample count " + std::to_string(dm.n()));

  std::vector<std::size_t> indices(dm.n());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_below(dm.n() - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());

  DataMatrix out;
  out.names = dm.names;
  out.values.assign(dm.p(), std::vector<double>(k));
  for (std::size_t v = 0; v < dm.p(); ++v) {
    for (std::size_t i = 0; i < k; ++i)
      out.values[v][i] = dm.values[v][indices[i]];
  }
  return out;
}

/// Rescales a series to mean 0 and population variance 1 (divisor n).
inline std::vector<double> standardize(std::span<const double> series) {
  if (series.size() < 2)
    throw ValidationError("standardize requires at least two samples");
  if (is_constant(series))
    throw ConstantSeriesError("series is constant; cannot standardize");
  const double m = mean(series);
  const double sd = stddev_pop(series);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - m) / sd;
  return out;
}

/// Generates the synthetic benchmark dataset. Errors are drawn in sample
/// order, three per sample (e0, e1, e2), from a single stream seeded with
/// spec.seed, so output is bitwise reproducible.
inline DataMatrix gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  DataMatrix dm;
  dm.names = {"x0", "x1", "x2"};
  dm.values.assign(3, std::vector<double>(spec.n));
  Rng rng(spec.seed);
  for (std::size_t s = 0; s < spec.n; ++s) {
    const double e0 = rng.next_laplace(spec.laplace_mu, spec.laplace_lambda);
    const double e1 = rng.next_laplace(spec.laplace_mu, spec.laplace_lambda);
    const double e2 = rng.next_laplace(spec.laplace_mu, spec.laplace_lambda);
    const double x0 = e0;
    const double x1 = spec.b10 * x0 + e1;
    const double x2 = spec.b21 * x1 + spec.b20 * x0 + e2;
    dm.values[0][s] = x0;
    dm.values[1][s] = x1;
    dm.values[2][s] = x2;
  }
  return dm;
}

}  // namespace causalkit
