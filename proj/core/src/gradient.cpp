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

#include "wecans/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "wecans/seeding.hpp"

namespace wecans {

std::int64_t ShotPlan::total() const { return std::accumulate(shots.begin(), shots.end(), std::int64_t{0}); }

std::int64_t GradientSample::total_shots() const {
    return std::accumulate(shots_used.begin(), shots_used.end(), std::int64_t{0});
}

std::int64_t GradientSample::total_switches() const {
    return std::accumulate(switches.begin(), switches.end(), std::int64_t{0});
}

namespace {

std::vector<double> split_weights(const Observable &obs) {
    if (obs.fixed_split()) {
        return *obs.fixed_split();
    }
    return obs.group_probs();
}

/// Rounded proportional split with every group getting at least one shot.
std::vector<std::int64_t> fixed_ratio_counts(const Observable &obs, std::int64_t shots) {
    const auto w = split_weights(obs);
    const std::size_t m = w.size();
    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<std::int64_t> n(m);
    std::int64_t assigned = 0;
    for (std::size_t j = 0; j < m; ++j) {
        n[j] = std::llround(static_cast<double>(shots) * w[j] / wsum);
        assigned += n[j];
    }
    const auto heaviest = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    n[heaviest] += shots - assigned;
    for (std::size_t j = 0; j < m; ++j) {
        while (n[j] < 1) {
            const auto donor = static_cast<std::size_t>(std::max_element(n.begin(), n.end()) - n.begin());
            --n[donor];
            ++n[j];
        }
    }
    return n;
}

CostEstimate estimate_weighted_random(const StateVector &state, const Observable &obs, std::int64_t shots,
                                      Rng &rng) {
    const auto &p = obs.group_probs();
    const auto counts = sample_multinomial(shots, p, rng);
    CostEstimate est;
    est.shots = shots;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] == 0) {
            continue;
        }
        ++est.circuits;
        const auto moments = GroupSampler(state, obs, j).sample_moments(counts[j], rng);
        // per-shot values are v / p_j
        sum += moments.sum / p[j];
        sum_sq += moments.sum_sq / (p[j] * p[j]);
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    est.mean = obs.constant() + mean;
    if (shots >= 2) {
        est.single_shot_variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    } else {
        est.single_shot_variance = mean * mean;
    }
    return est;
}

CostEstimate estimate_fixed_ratio(const StateVector &state, const Observable &obs, std::int64_t shots, Rng &rng) {
    const auto counts = fixed_ratio_counts(obs, shots);
    CostEstimate est;
    est.shots = shots;
    est.mean = obs.constant();
    double var_of_mean = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        ++est.circuits;
        const auto moments = GroupSampler(state, obs, j).sample_moments(counts[j], rng);
        const double group_mean = moments.mean();
        est.mean += group_mean;
        const double group_var = moments.count >= 2 ? moments.sample_variance() : group_mean * group_mean;
        var_of_mean += group_var / static_cast<double>(moments.count);
    }
    est.single_shot_variance = var_of_mean * static_cast<double>(shots);
    return est;
}

} // namespace

std::int64_t min_shots_per_evaluation(const Observable &obs, const EstimatorOptions &options) {
    if (options.allocation == GroupAllocation::FixedRatio) {
        return static_cast<std::int64_t>(obs.num_groups());
    }
    return 1;
}

std::int64_t effective_component_shots(std::int64_t requested, const Observable &obs,
                                       const EstimatorOptions &options) {
    std::int64_t s = requested + (requested % 2);
    return std::max(s, 2 * min_shots_per_evaluation(obs, options));
}

CostEstimate estimate_cost(const StateVector &state, const Observable &obs, std::int64_t shots,
                           const EstimatorOptions &options, Rng &rng) {
    if (shots < min_shots_per_evaluation(obs, options)) {
        throw std::invalid_argument("estimate_cost: too few shots for the allocation mode");
    }
    if (options.mode == EvaluationMode::Exact) {
        CostEstimate est;
        est.mean = exact_expectation(state, obs);
        est.shots = shots;
        est.circuits = static_cast<std::int64_t>(obs.num_groups());
        return est;
    }
    if (options.allocation == GroupAllocation::FixedRatio) {
        return estimate_fixed_ratio(state, obs, shots, rng);
    }
    return estimate_weighted_random(state, obs, shots, rng);
}

GradientSample i_evaluate(const ParametricCircuit &circuit, const Observable &obs,
                          std::span<const double> theta, const ShotPlan &plan,
                          const EstimatorOptions &options, Rng &rng) {
    const std::size_t d = circuit.num_params();
    if (theta.size() != d) {
        throw std::invalid_argument("i_evaluate: theta has wrong dimension");
    }
    if (plan.size() != d) {
        throw std::invalid_argument("i_evaluate: shot plan has wrong dimension");
    }
    if (circuit.n_qubits() != obs.n_qubits()) {
        throw std::invalid_argument("i_evaluate: circuit and observable qubit counts differ");
    }
    for (auto s : plan.shots) {
        if (s < 2) {
            throw std::invalid_argument("i_evaluate: every component needs at least 2 shots");
        }
    }

    GradientSample out;
    out.grad.resize(d);
    out.variance.resize(d);
    out.shots_used.resize(d);
    out.switches.resize(d);

    const std::uint64_t call_seed = rng();
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t i = 0; i < d; ++i) {
        Rng component_rng(mix_seed(call_seed, i));
        const std::int64_t s = effective_component_shots(plan.shots[i], obs, options);
        const std::int64_t half = s / 2;

        shifted[i] = theta[i] + std::numbers::pi / 2.0;
        const auto plus = estimate_cost(run(circuit, shifted), obs, half, options, component_rng);
        shifted[i] = theta[i] - std::numbers::pi / 2.0;
        const auto minus = estimate_cost(run(circuit, shifted), obs, half, options, component_rng);
        shifted[i] = theta[i];

        out.grad[i] = 0.5 * (plus.mean - minus.mean);
        out.variance[i] = 0.5 * (plus.single_shot_variance + minus.single_shot_variance);
        out.shots_used[i] = s;
        out.switches[i] = plus.circuits + minus.circuits;
    }
    return out;
}

double wrs_single_shot_value(double value, double prob) {
    if (!(prob > 0.0)) {
        throw std::invalid_argument("wrs_single_shot_value: group probability must be positive");
    }
    return value / prob;
}

double expected_switches(const Observable &obs, double s_tilde, int shifts, double neglect_below) {
    if (shifts < 1) {
        throw std::invalid_argument("expected_switches: shifts must be positive");
    }
    const double per_shift = std::max(s_tilde, static_cast<double>(shifts)) / shifts;
    double missed = 0.0;
    for (double p : obs.group_probs()) {
        const double t = std::pow(1.0 - p, per_shift);
        if (t >= neglect_below) {
            missed += t;
        }
    }
    return shifts * (static_cast<double>(obs.num_groups()) - missed);
}

} // namespace wecans
