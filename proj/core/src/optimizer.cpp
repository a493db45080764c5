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

#include "wecans/optimizer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "wecans/allocators.hpp"

namespace wecans {

namespace {

constexpr std::array<std::pair<OptimizerKind, std::string_view>, 8> kNames{{
    {OptimizerKind::Sgd, "sgd"},
    {OptimizerKind::Adam, "adam"},
    {OptimizerKind::ICans, "icans"},
    {OptimizerKind::GCans, "gcans"},
    {OptimizerKind::WeCansI, "wecans-i"},
    {OptimizerKind::WeCansG, "wecans-g"},
    {OptimizerKind::AdamCans, "adamcans"},
    {OptimizerKind::WeAdamCans, "we-adamcans"},
}};

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

/// State shared by every loop: parameters, clock and the trace being built.
class Run {
  public:
    Run(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
        const OptimizerConfig &config, const CostModels &models)
        : circuit_(circuit), obs_(obs), config_(resolve_defaults(config, circuit.num_params(), obs)),
          clock_(models.time, models.price), theta_(theta0.begin(), theta0.end()) {
        if (theta_.size() != circuit.num_params()) {
            throw std::invalid_argument("initial parameters do not match the circuit");
        }
        if (circuit.n_qubits() != obs.n_qubits()) {
            throw std::invalid_argument("circuit and observable qubit counts differ");
        }
        trace_.alpha = *config_.alpha;
        trace_.lipschitz = *config_.lipschitz;
    }

    [[nodiscard]] bool done() const {
        return config_.budget.exhausted(clock_, static_cast<std::int64_t>(trace_.records.size()));
    }

    GradientSample evaluate(const ShotPlan &plan, Rng &rng) {
        auto gs = i_evaluate(circuit_, obs_, theta_, plan, config_.estimator, rng);
        clock_.charge_iteration(gs.total_shots(), gs.total_switches(), gs.comm_rounds);
        return gs;
    }

    void step(std::span<const double> direction, double alpha) {
        for (std::size_t i = 0; i < theta_.size(); ++i) {
            theta_[i] -= alpha * direction[i];
        }
    }

    void record(const GradientSample &gs, bool fallback) {
        IterationRecord rec;
        rec.k = static_cast<std::int64_t>(trace_.records.size());
        if (config_.record_theta) {
            rec.theta = theta_;
        }
        rec.exact_cost = exact_expectation(run(circuit_, theta_), obs_);
        rec.sim_time = clock_.sim_time();
        rec.econ_cost = clock_.econ_cost();
        rec.total_shots = clock_.total_shots();
        rec.shot_plan = gs.shots_used;
        double sq = 0.0;
        for (double g : gs.grad) {
            sq += g * g;
        }
        rec.grad_norm_est = std::sqrt(sq);
        rec.fallback = fallback;
        trace_.records.push_back(std::move(rec));
    }

    OverheadRatio overheads(const LatencyModel &model, std::span<const double> s_tilde) {
        auto ratio = overhead_ratios(model, planned_switches(obs_, config_.estimator, s_tilde));
        trace_.overhead_sentinel = trace_.overhead_sentinel || ratio.sentinel;
        return ratio;
    }

    [[nodiscard]] const OptimizerConfig &config() const { return config_; }
    [[nodiscard]] std::size_t dim() const { return theta_.size(); }
    RunTrace finish() { return std::move(trace_); }

  private:
    const ParametricCircuit &circuit_;
    const Observable &obs_;
    OptimizerConfig config_;
    CostClock clock_;
    std::vector<double> theta_;
    RunTrace trace_;
};

std::vector<double> as_doubles(std::span<const std::int64_t> v) { return {v.begin(), v.end()}; }

} // namespace

std::string_view optimizer_name(OptimizerKind kind) {
    for (const auto &[k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    throw std::invalid_argument("unknown optimizer kind");
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
    for (const auto &[k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown optimizer \"" + std::string(name) + "\"");
}

void Budget::validate() const {
    if (!max_time && !max_cost && !max_shots && !max_iterations) {
        throw std::invalid_argument("budget: at least one limit is required");
    }
    if ((max_time && !(*max_time > 0.0)) || (max_cost && !(*max_cost > 0.0)) || (max_shots && *max_shots <= 0) ||
        (max_iterations && *max_iterations <= 0)) {
        throw std::invalid_argument("budget: limits must be positive");
    }
}

bool Budget::exhausted(const CostClock &clock, std::int64_t iterations) const {
    return (max_time && clock.sim_time() >= *max_time) || (max_cost && clock.econ_cost() >= *max_cost) ||
           (max_shots && clock.total_shots() >= *max_shots) || (max_iterations && iterations >= *max_iterations);
}

void OptimizerConfig::validate() const {
    if (alpha && !(std::isfinite(*alpha) && *alpha >= 0.0)) {
        throw std::invalid_argument("alpha must be finite and nonnegative");
    }
    if (lipschitz && !(std::isfinite(*lipschitz) && *lipschitz > 0.0)) {
        throw std::invalid_argument("Lipschitz constant must be positive");
    }
    if (!in_open_unit(beta1) || !in_open_unit(beta2) || !in_open_unit(mu)) {
        throw std::invalid_argument("beta1, beta2 and mu must lie in (0, 1)");
    }
    if (!in_open_unit(r)) {
        throw std::invalid_argument("clipping rate r must lie in (0, 1)");
    }
    if (!(epsilon >= 0.0)) {
        throw std::invalid_argument("epsilon must be nonnegative");
    }
    if (s_min < kCansMinShots) {
        throw std::invalid_argument("s_min must be at least 2");
    }
    if (fixed_shots < 1) {
        throw std::invalid_argument("fixed shot count must be positive");
    }
    budget.validate();
}

OptimizerConfig resolve_defaults(const OptimizerConfig &config, std::size_t d, const Observable &obs) {
    config.validate();
    OptimizerConfig out = config;
    if (!out.lipschitz) {
        out.lipschitz = static_cast<double>(d) * one_norm_bound(obs);
    }
    if (!out.alpha) {
        out.alpha = 1.0 / *out.lipschitz;
    }
    return out;
}

std::vector<double> planned_switches(const Observable &obs, const EstimatorOptions &options,
                                     std::span<const double> s_tilde) {
    const double deterministic = 2.0 * static_cast<double>(obs.num_groups());
    std::vector<double> m;
    m.reserve(s_tilde.size());
    for (double s : s_tilde) {
        if (options.mode == EvaluationMode::Exact || options.allocation == GroupAllocation::FixedRatio) {
            m.push_back(deterministic);
        } else {
            m.push_back(expected_switches(obs, s));
        }
    }
    return m;
}

RunTrace run_sgd(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                 const OptimizerConfig &config, const CostModels &models, Rng &rng) {
    Run run(circuit, obs, theta0, config, models);
    const auto plan = ShotPlan::uniform(run.dim(), 2 * run.config().fixed_shots);
    const double alpha = *run.config().alpha;
    while (!run.done()) {
        const auto gs = run.evaluate(plan, rng);
        run.step(gs.grad, alpha);
        run.record(gs, false);
    }
    return run.finish();
}

RunTrace run_adam(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng, AdamAllocator allocator) {
    Run run(circuit, obs, theta0, config, models);
    const auto &cfg = run.config();
    const std::size_t d = run.dim();
    const double alpha0 = *cfg.alpha;
    const double L = *cfg.lipschitz;
    if (allocator != AdamAllocator::FixedShots && !(alpha0 > 0.0)) {
        throw std::invalid_argument("adaptive Adam needs a positive step size");
    }

    ShotPlan plan = allocator == AdamAllocator::FixedShots ? ShotPlan::uniform(d, 2 * cfg.fixed_shots)
                                                           : ShotPlan::uniform(d, cfg.s_min);
    std::vector<double> m_raw(d, 0.0);
    std::vector<double> v_raw(d, 0.0);
    std::vector<double> direction(d);
    EmaTracker ema(d, cfg.mu);
    BiasCorrectedEma s_tilde(d, cfg.mu);
    double alpha = alpha0;

    for (std::int64_t k = 0; !run.done(); ++k) {
        const std::int64_t t = k + 1;
        const auto gs = run.evaluate(plan, rng);
        const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
        const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
        for (std::size_t i = 0; i < d; ++i) {
            const double g = gs.grad[i];
            m_raw[i] = cfg.beta1 * m_raw[i] + (1.0 - cfg.beta1) * g;
            v_raw[i] = cfg.beta2 * v_raw[i] + (1.0 - cfg.beta2) * g * g;
            direction[i] = (m_raw[i] / c1) / (std::sqrt(v_raw[i] / c2) + cfg.epsilon);
        }
        run.step(direction, alpha);

        bool fallback = false;
        if (allocator != AdamAllocator::FixedShots) {
            ema.update(gs.grad, gs.variance);
            s_tilde.update(as_doubles(gs.shots_used));
            const auto chi = ema.chi();
            const auto xi = ema.xi();
            const auto x = adam_direction(chi, m_raw, v_raw, cfg.beta1, cfg.beta2, cfg.epsilon, t + 1);
            const auto clip = clip_alpha(chi, x, L, alpha0, cfg.r);
            const auto gain = adam_gain_terms(
                {chi, xi, m_raw, v_raw, clip.alpha, L, cfg.epsilon, cfg.beta1, cfg.beta2, t + 1});
            double overhead = 0.0;
            if (allocator == AdamAllocator::WeAdamCans) {
                overhead = run.overheads(models.allocation_model(), s_tilde.corrected()).total;
            }
            if (gain.A > 0.0) {
                plan = we_adam_shots(gain.A, gain.B, overhead, cfg.s_min);
            } else {
                plan = ShotPlan::uniform(d, cfg.s_min);
                fallback = true;
            }
            alpha = cfg.clipping ? clip.alpha : alpha0;
        }
        run.record(gs, fallback);
    }
    return run.finish();
}

RunTrace run_cans(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng, CansRule rule) {
    Run run(circuit, obs, theta0, config, models);
    const auto &cfg = run.config();
    const std::size_t d = run.dim();
    const double alpha = *cfg.alpha;
    const double L = *cfg.lipschitz;
    check_step_size(L, alpha);

    ShotPlan plan = ShotPlan::uniform(d, kCansMinShots);
    EmaTracker ema(d, cfg.mu);
    BiasCorrectedEma s_tilde(d, cfg.mu);

    while (!run.done()) {
        const auto gs = run.evaluate(plan, rng);
        run.step(gs.grad, alpha);
        ema.update(gs.grad, gs.variance);
        s_tilde.update(as_doubles(gs.shots_used));
        const auto chi = ema.chi();
        const auto xi = ema.xi();
        switch (rule) {
        case CansRule::ICans:
            plan = icans_shots(chi, xi, L, alpha);
            break;
        case CansRule::GCans:
            plan = gcans_shots(chi, xi, L, alpha);
            break;
        case CansRule::WeCansI: {
            const auto ratio = run.overheads(models.allocation_model(), s_tilde.corrected());
            plan = wecans_i_shots(chi, xi, L, alpha, ratio.per_component);
            break;
        }
        case CansRule::WeCansG: {
            const auto ratio = run.overheads(models.allocation_model(), s_tilde.corrected());
            plan = wecans_g_shots(chi, xi, L, alpha, ratio.total);
            break;
        }
        }
        run.record(gs, false);
    }
    return run.finish();
}

RunTrace optimize(const ParametricCircuit &circuit, const Observable &obs, std::span<const double> theta0,
                  const OptimizerConfig &config, const CostModels &models, Rng &rng) {
    switch (config.kind) {
    case OptimizerKind::Sgd:
        return run_sgd(circuit, obs, theta0, config, models, rng);
    case OptimizerKind::Adam:
        return run_adam(circuit, obs, theta0, config, models, rng, AdamAllocator::FixedShots);
    case OptimizerKind::AdamCans:
        return run_adam(circuit, obs, theta0, config, models, rng, AdamAllocator::AdamCans);
    case OptimizerKind::WeAdamCans:
        return run_adam(circuit, obs, theta0, config, models, rng, AdamAllocator::WeAdamCans);
    case OptimizerKind::ICans:
        return run_cans(circuit, obs, theta0, config, models, rng, CansRule::ICans);
    case OptimizerKind::GCans:
        return run_cans(circuit, obs, theta0, config, models, rng, CansRule::GCans);
    case OptimizerKind::WeCansI:
        return run_cans(circuit, obs, theta0, config, models, rng, CansRule::WeCansI);
    case OptimizerKind::WeCansG:
        return run_cans(circuit, obs, theta0, config, models, rng, CansRule::WeCansG);
    }
    throw std::invalid_argument("unknown optimizer kind");
}

} // namespace wecans
