// Copyright 2026 The wecans Authors
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

/**
 * @file trace.hpp
 * Trace files (NDJSON with a config header, plus a CSV mirror) and
 * across-seed aggregation: median curves and time-to-threshold.
 *
 * NDJSON layout: line 1 is {"type": "header", "config": ..., "alpha": ..,
 * "lipschitz": .., "overhead_sentinel": ..}; every further line is one
 * iteration {"type": "iteration", "k", "theta"?, "exact_cost", "sim_time",
 * "econ_cost", "total_shots", "shot_plan", "grad_norm_est", "fallback"}.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wecans/optimizer.hpp"

namespace wecans {

struct TraceFile {
    nlohmann::json config;
    RunTrace trace;
};

void write_trace(std::ostream &out, const RunTrace &trace, const nlohmann::json &config);
/// Columns k, sim_time, econ_cost, total_shots, exact_cost.
void write_trace_csv(std::ostream &out, const RunTrace &trace);

/// Writes `path` (NDJSON) and the CSV mirror next to it with extension
/// ".csv". Throws IoError.
void trace_emit(const RunTrace &trace, const nlohmann::json &config, const std::filesystem::path &path);

/// Throws std::invalid_argument on malformed content.
TraceFile parse_trace(std::string_view text);
/// Throws IoError when the file cannot be read.
TraceFile load_trace(const std::filesystem::path &path);

enum class Axis { SimTime, EconCost, Shots, Iterations };

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view name);

/// Step function (x_k, y_k) with y = (exact_cost - reference) / scale.
struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

Series trace_series(const RunTrace &trace, Axis axis, double reference = 0.0, double scale = 1.0);

struct MedianCurve {
    std::vector<double> grid;
    /// NaN where no series has started.
    std::vector<double> median;
    /// Series contributing at each grid point.
    std::vector<std::size_t> count;
};

/**
 * At each grid point every series contributes its last value with x <= t;
 * series whose first x is later are left out. The median of an even count
 * is the lower middle element. Throws std::invalid_argument when `series`
 * is empty or the grid is not strictly increasing.
 */
MedianCurve median_curve(std::span<const Series> series, std::span<const double> grid);

/// Median at a single x under the same rule; nullopt when no series started.
std::optional<double> median_at(std::span<const Series> series, double x);

/// Earliest event x at which the median drops to `threshold` or below,
/// evaluated exactly on the union of all series' x values.
std::optional<double> time_to_threshold(std::span<const Series> series, double threshold);

/// n points from lo to hi, equally spaced in log10; requires 0 < lo < hi, n >= 2.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

} // namespace wecans
