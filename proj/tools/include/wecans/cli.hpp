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
 * @file cli.hpp
 * The `wecans` command line: run one cell, sweep a grid of cells, summarize
 * a sweep. Exposed as a library so the commands can run in-process.
 *
 * Exit codes: 0 success, 1 invalid configuration, 2 I/O failure,
 * 3 task and ansatz inconsistent.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wecans/optimizer.hpp"
#include "wecans/tasks.hpp"
#include "wecans/trace.hpp"

namespace wecans::cli {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kIoFailure = 2, kTaskMismatch = 3 };

/// One (task, optimizer, seed) run, fully specified.
struct RunCell {
    TaskSpec task;
    /// Optimizer label as given, e.g. "icans" or "adam-100"; it also names
    /// the run's random stream.
    std::string optimizer_label;
    OptimizerConfig optimizer;
    CostModels costs;
    bool exact_evaluation = false;
    std::uint64_t master_seed = 0;
    std::uint64_t seed_index = 0;
};

/// "adam-100" -> Adam with 100 shots per evaluation; plain names parse via
/// parse_optimizer_kind. Throws std::invalid_argument.
void apply_optimizer_label(const std::string &label, OptimizerConfig &config);

nlohmann::json to_json(const TaskSpec &spec);
TaskSpec task_from_json(const nlohmann::json &j);
nlohmann::json to_json(const LatencyModel &model);
LatencyModel latency_from_json(const nlohmann::json &j);
nlohmann::json to_json(const OptimizerConfig &config);
OptimizerConfig optimizer_from_json(const nlohmann::json &j);
nlohmann::json to_json(const RunCell &cell);
RunCell cell_from_json(const nlohmann::json &j);

/// "superconducting", "braket-rigetti" and "zero" name the bundled
/// profiles; anything else is read as a JSON file.
LatencyModel resolve_latency(const std::string &name_or_path);

struct CellResult {
    Task task;
    RunTrace trace;
};

/// Executes a cell. theta0 depends only on (master seed, seed index), so all
/// optimizers of a sweep start from the same point per seed.
CellResult run_cell(const RunCell &cell);

/// Runs the cell and writes its trace (NDJSON + CSV).
void run_cell_to_file(const RunCell &cell, const std::filesystem::path &path);

struct ManifestEntry {
    RunCell cell;
    /// Relative to the manifest's directory.
    std::string trace;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    double reference = 0.0;
    double scale = 1.0;
};

nlohmann::json to_json(const Manifest &manifest);
Manifest manifest_from_json(const nlohmann::json &j);
Manifest load_manifest(const std::filesystem::path &path);

/// Runs every entry with up to `workers` threads and writes the traces and
/// manifest.json into `out_dir`.
void execute_sweep(const Manifest &manifest, const std::filesystem::path &out_dir, std::size_t workers);

struct OptimizerSummary {
    std::string optimizer;
    std::size_t runs = 0;
    std::optional<double> time_to_threshold;
    /// Median of the final metric values.
    double final_median = 0.0;
    MedianCurve curve;
};

/// Groups a manifest's traces by optimizer label, in first-appearance order.
std::vector<OptimizerSummary> summarize(const Manifest &manifest, const std::filesystem::path &manifest_dir,
                                        Axis axis, double threshold, std::size_t grid_points);

/// Entry point; argv[0] is the program name.
int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace wecans::cli
