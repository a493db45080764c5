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


// Micro benchmarks for the hot paths: statevector simulation, the
// parameter-shift estimator and the shot rules.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "wecans/allocators.hpp"
#include "wecans/gradient.hpp"
#include "wecans/optimizer.hpp"
#include "wecans/statevector.hpp"
#include "wecans/tasks.hpp"

using namespace wecans;

namespace {

Task tfim_task(std::size_t n) {
    TaskSpec spec;
    spec.kind = TaskKind::Tfim;
    spec.n = n;
    spec.depth = 3;
    return build_task(spec);
}

void BM_StatevectorRun(benchmark::State &state) {
    const auto task = tfim_task(static_cast<std::size_t>(state.range(0)));
    const auto theta = initial_parameters(task.circuit.num_params(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(task.circuit, theta));
    }
}
BENCHMARK(BM_StatevectorRun)->DenseRange(4, 12, 4);

void BM_ExactExpectation(benchmark::State &state) {
    const auto task = tfim_task(static_cast<std::size_t>(state.range(0)));
    const auto psi = run(task.circuit, initial_parameters(task.circuit.num_params(), 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_expectation(psi, task.observable));
    }
}
BENCHMARK(BM_ExactExpectation)->DenseRange(4, 12, 4);

void BM_IEvaluate(benchmark::State &state) {
    const auto task = tfim_task(6);
    const auto theta = initial_parameters(task.circuit.num_params(), 2);
    const auto plan = ShotPlan::uniform(theta.size(), state.range(0));
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(i_evaluate(task.circuit, task.observable, theta, plan, task.estimator, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(theta.size()) * state.range(0));
}
BENCHMARK(BM_IEvaluate)->Arg(100)->Arg(10000)->Arg(1000000);

struct RuleInputs {
    std::vector<double> chi, xi, m, v, R;
};

RuleInputs rule_inputs(std::size_t d) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RuleInputs in;
    for (std::size_t i = 0; i < d; ++i) {
        in.chi.push_back(u(rng) - 0.5);
        in.xi.push_back(u(rng));
        in.m.push_back(0.1 * (u(rng) - 0.5));
        in.v.push_back(0.01 + u(rng));
        in.R.push_back(1e4 * u(rng));
    }
    return in;
}

void BM_WeCansI(benchmark::State &state) {
    const auto in = rule_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wecans_i_shots(in.chi, in.xi, 1.0, 0.5, in.R));
    }
}
BENCHMARK(BM_WeCansI)->Arg(10)->Arg(100);

void BM_WeCansG(benchmark::State &state) {
    const auto in = rule_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wecans_g_shots(in.chi, in.xi, 1.0, 0.5, 1e5));
    }
}
BENCHMARK(BM_WeCansG)->Arg(10)->Arg(100);

void BM_WeAdam(benchmark::State &state) {
    const auto in = rule_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        AdamGainInput g{in.chi, in.xi, in.m, in.v, 0.01, 10.0, 1e-8, 0.9, 0.99, 10};
        const auto gain = adam_gain_terms(g);
        if (gain.A > 0) {
            benchmark::DoNotOptimize(we_adam_shots(gain.A, gain.B, 1e5, 100));
        }
    }
}
BENCHMARK(BM_WeAdam)->Arg(10)->Arg(100);

void BM_CompileRun(benchmark::State &state) {
    TaskSpec spec;
    const auto task = build_task(spec);
    OptimizerConfig cfg;
    cfg.kind = OptimizerKind::WeAdamCans;
    cfg.budget.max_time = 2000;
    cfg.estimator = task.estimator;
    const CostModels models{LatencyModel::superconducting(), std::nullopt, std::nullopt};
    const auto theta0 = initial_parameters(task.circuit.num_params(), 0);
    for (auto _ : state) {
        Rng rng(0);
        benchmark::DoNotOptimize(optimize(task.circuit, task.observable, theta0, cfg, models, rng));
    }
}
BENCHMARK(BM_CompileRun)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
