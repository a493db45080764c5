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
 * @file gradient.hpp
 * Shot-limited parameter-shift gradient estimation with weighted random
 * sampling (WRS) or a fixed-ratio split over measurement groups.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wecans/circuit.hpp"
#include "wecans/observable.hpp"
#include "wecans/statevector.hpp"

namespace wecans {

enum class GroupAllocation {
    /// Each shot picks group j with probability p_j (multinomial counts).
    WeightedRandom,
    /// Shots split across groups in proportion to Observable::fixed_split().
    FixedRatio,
};

enum class EvaluationMode {
    Sampled,
    /// Exact expectations, zero variance. For isolating optimizer logic.
    Exact,
};

struct EstimatorOptions {
    GroupAllocation allocation = GroupAllocation::WeightedRandom;
    EvaluationMode mode = EvaluationMode::Sampled;
};

/// Shots per gradient component (s_i covers both shifted evaluations).
struct ShotPlan {
    std::vector<std::int64_t> shots;

    static ShotPlan uniform(std::size_t d, std::int64_t s) { return {std::vector<std::int64_t>(d, s)}; }
    [[nodiscard]] std::size_t size() const { return shots.size(); }
    [[nodiscard]] std::int64_t total() const;
};

/// Noisy estimate of the cost at one parameter point.
struct CostEstimate {
    double mean = 0.0;
    /// Variance of a single shot's contribution; Var(mean) ~= this / shots.
    double single_shot_variance = 0.0;
    std::int64_t shots = 0;
    /// Distinct (circuit, group) pairs executed.
    std::int64_t circuits = 0;
};

struct GradientSample {
    std::vector<double> grad;
    /// Per-shot variance S_i, so Var(grad_i) ~= S_i / shots_used_i.
    std::vector<double> variance;
    std::vector<std::int64_t> shots_used;
    /// Circuit switches m_i spent on component i.
    std::vector<std::int64_t> switches;
    std::int64_t comm_rounds = 1;

    [[nodiscard]] std::int64_t total_shots() const;
    [[nodiscard]] std::int64_t total_switches() const;
};

/// Smallest per-evaluation shot count the allocation mode accepts: the
/// fixed-ratio split gives every group at least one shot.
std::int64_t min_shots_per_evaluation(const Observable &obs, const EstimatorOptions &options);

/// Shots actually spent on a component when s_i is requested: odd counts are
/// rounded up to even, and fixed-ratio mode raises s_i to 2 * groups.
std::int64_t effective_component_shots(std::int64_t requested, const Observable &obs,
                                       const EstimatorOptions &options);

/// One cost evaluation of `state` with `shots` shots.
CostEstimate estimate_cost(const StateVector &state, const Observable &obs, std::int64_t shots,
                           const EstimatorOptions &options, Rng &rng);

/**
 * Parameter-shift gradient: component i evaluates the cost at
 * theta +- (pi/2) e_i with s_i/2 shots each, g_i = (f+ - f-)/2 and
 * S_i = (var+ + var-)/2 from the per-shot sample variances.
 *
 * Each component draws from its own stream seeded from one draw of `rng`,
 * so results do not depend on evaluation order.
 */
GradientSample i_evaluate(const ParametricCircuit &circuit, const Observable &obs,
                          std::span<const double> theta, const ShotPlan &plan,
                          const EstimatorOptions &options, Rng &rng);

/// Inverse-probability weighted single-shot value v_j / p_j.
double wrs_single_shot_value(double value, double prob);

/// Expected circuit switches per component for s_tilde shots under WRS,
/// shifts * (M - sum_j (1 - p_j)^(s_tilde / shifts)), dropping terms below
/// `neglect_below`.
double expected_switches(const Observable &obs, double s_tilde, int shifts = 2, double neglect_below = 0.01);

} // namespace wecans
