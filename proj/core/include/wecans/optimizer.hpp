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
 * @file optimizer.hpp
 * Budgeted optimization loops: plain SGD, fixed-shot Adam, the CANS family
 * (iCANS, gCANS, weCANS(i), weCANS(g)) and the Adam-based AdamCANS and
 * we-AdamCANS.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wecans/circuit.hpp"
#include "wecans/cost_clock.hpp"
#include "wecans/gradient.hpp"
#include "wecans/observable.hpp"
#include "wecans/statevector.hpp"

namespace wecans {

enum class OptimizerKind { Sgd, Adam, ICans, GCans, WeCansI, WeCansG, AdamCans, WeAdamCans };

/// "sgd", "adam", "icans", "gcans", "wecans-i", "wecans-g", "adamcans", "we-adamcans".
std::string_view optimizer_name(OptimizerKind kind);
/// Inverse of optimizer_name; throws std::invalid_argument.
OptimizerKind parse_optimizer_kind(std::string_view name);

/// Stop conditions. The run continues while every set limit is unreached,
/// so the final totals exceed a limit by at most one iteration.
struct Budget {
    std::optional<double> max_time;
    std::optional<double> max_cost;
    std::optional<std::int64_t> max_shots;
    std::optional<std::int64_t> max_iterations;

    /// Throws std::invalid_argument when nothing is set or a limit is <= 0.
    void validate() const;
    [[nodiscard]] bool exhausted(const CostClock &clock, std::int64_t iterations) const;
};

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::WeAdamCans;
    /// Step size; unset selects 1 / L. Zero is accepted for SGD and
    /// fixed-shot Adam (parameters then stay put).
    std::optional<double> alpha;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double epsilon = 1e-8;
    double mu = 0.99;
    std::int64_t s_min = 100;
    double r = 0.75;
    bool clipping = false;
    /// Lipschitz constant; unset selects d * one_norm(H).
    std::optional<double> lipschitz;
    /// Shots per cost evaluation for SGD and fixed-shot Adam (s_i = 2 * this).
    std::int64_t fixed_shots = 100;
    Budget budget;
    EstimatorOptions estimator;
    bool record_theta = false;

    /// Throws std::invalid_argument on out-of-range hyperparameters.
    void validate() const;
};

/// Linear cost models attached to a run. `time` drives sim_time, `price`
/// (when set) drives econ_cost, and `allocation` (defaulting to `time`) is
/// the model whose overhead ratios the latency-aware rules optimize against.
struct CostModels {
    LatencyModel time;
    std::optional<LatencyModel> price;
    std::optional<LatencyModel> allocation;

    [[nodiscard]] const LatencyModel &allocation_model() const { return allocation ? *allocation : time; }
};

struct IterationRecord {
    std::int64_t k = 0;
    /// Parameters after the update; empty unless record_theta is set.
    std::vector<double> theta;
    /// Noise-free cost at the updated parameters.
    double exact_cost = 0.0;
    double sim_time = 0.0;
    double econ_cost = 0.0;
    std::int64_t total_shots = 0;
    /// Shots spent per component in this iteration.
    std::vector<std::int64_t> shot_plan;
    double grad_norm_est = 0.0;
    /// The next plan fell back to all-s_min because the gain estimate was
    /// not positive.
    bool fallback = false;

    friend bool operator==(const IterationRecord &, const IterationRecord &) = default;
};

struct RunTrace {
    std::vector<IterationRecord> records;
    /// Resolved step size and Lipschitz constant.
    double alpha = 0.0;
    double lipschitz = 0.0;
    /// Some overhead ratio was the c1 = 0 sentinel instead of a quotient.
    bool overhead_sentinel = false;

    friend bool operator==(const RunTrace &, const RunTrace &) = default;
};

/// Validates `config`, then fills L = d * one_norm(H) and alpha = 1 / L when unset.
OptimizerConfig resolve_defaults(const OptimizerConfig &config, std::size_t d, const Observable &obs);

enum class AdamAllocator { FixedShots, AdamCans, WeAdamCans };
enum class CansRule { ICans, GCans, WeCansI, WeCansG };

/// theta <- theta - alpha g with a fixed plan of 2 * fixed_shots per component.
RunTrace run_sgd(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                 const OptimizerConfig &config, const CostModels &models, Rng &rng);

/**
 * Adam with bias-corrected moments. With an adaptive allocator the next
 * plan comes from the Taylor-approximated Adam gain evaluated at the moving
 * averages chi, xi, using the step index t + 1 for the predicted moments.
 * AdamCans forces R = 0. With clipping off, the clipped step size only
 * enters the shot computation.
 */
RunTrace run_adam(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng, AdamAllocator allocator);

/// SGD with a CANS-family plan. Starts from 2 shots per component.
RunTrace run_cans(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng, CansRule rule);

/// Dispatches on config.kind.
RunTrace optimize(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng);

/// Per-component circuit switches assumed when computing overhead ratios:
/// the WRS expectation at s_tilde under weighted random sampling, otherwise
/// the deterministic 2M.
std::vector<double> planned_switches(const Observable &obs, const EstimatorOptions &options,
                                     std::span<const double> s_tilde);

} // namespace wecans
