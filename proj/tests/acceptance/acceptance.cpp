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


// Acceptance checks. Prints one "PASS <n>: ..." or "FAIL <n>: ..." line per
// criterion and exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rule_checks.hpp"
#include "wecans/allocators.hpp"
#include "wecans/cli.hpp"
#include "wecans/cost_clock.hpp"
#include "wecans/gradient.hpp"
#include "wecans/optimizer.hpp"
#include "wecans/tasks.hpp"
#include "wecans/trace.hpp"

namespace fs = std::filesystem;
using namespace wecans;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const Outcome &o, double seconds) {
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << seconds;
    std::cout << (o.pass ? "PASS " : "FAIL ") << n << ": " << o.detail << " [" << t.str() << " s]" << std::endl;
    failures += o.pass ? 0 : 1;
}

void criterion(int n, const std::function<Outcome()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report(n, o, dt.count());
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

std::string fmt_time(const std::optional<double> &t, double budget, const std::string &unit) {
    return t ? fmt(*t) + unit : "never within " + fmt(budget) + unit;
}

int cli_call(const std::vector<std::string> &args) {
    std::vector<std::string> storage{"wecans"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : storage) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) {
        throw std::runtime_error("wecans " + args.front() + " failed: " + err.str());
    }
    return code;
}

std::string workers() { return std::to_string(std::max(1u, std::thread::hardware_concurrency())); }

/// Runs a sweep into `dir` and returns the per-optimizer summary.
std::vector<cli::OptimizerSummary> sweep(const fs::path &dir, std::vector<std::string> args, Axis axis,
                                         double threshold) {
    args.insert(args.begin(), "sweep");
    args.insert(args.end(), {"--out-dir", dir.string(), "--workers", workers()});
    cli_call(args);
    const auto manifest = cli::load_manifest(dir / "manifest.json");
    return cli::summarize(manifest, dir, axis, threshold, 200);
}

const cli::OptimizerSummary &find(const std::vector<cli::OptimizerSummary> &s, const std::string &name) {
    for (const auto &x : s) {
        if (x.optimizer == name) {
            return x;
        }
    }
    throw std::runtime_error("no summary for " + name);
}

/// Ratio t_other / t_ours, using the budget as a lower bound for a
/// competitor that never reached the threshold.
std::optional<double> speedup_lower_bound(const std::optional<double> &ours, const std::optional<double> &other,
                                          double budget) {
    if (!ours) {
        return std::nullopt;
    }
    return (other ? *other : budget) / *ours;
}

fs::path scratch_root() {
    const auto root = fs::temp_directory_path() / "wecans_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    return root;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// -- criteria --------------------------------------------------------------

Outcome closed_forms() {
    std::ostringstream msg;
    bool ok = true;
    for (auto rule : {oracle::Rule::ICans, oracle::Rule::GCans, oracle::Rule::WeCansI, oracle::Rule::WeCansG,
                      oracle::Rule::WeAdam}) {
        const auto r = oracle::check_rule(rule, 100, 0xACCE97);
        ok = ok && r.draws == 100 && r.failures == 0;
        msg << oracle::rule_name(rule) << " " << r.draws - r.failures << "/" << r.draws << " (max dev "
            << r.max_deviation << ") ";
        if (!r.first_failure.empty()) {
            msg << "[" << r.first_failure << "] ";
        }
    }
    return {ok, "closed form vs exhaustive integer maximizer within +-1: " + msg.str()};
}

Outcome limit_reductions() {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mismatches = 0;
    const int draws = 1000;
    for (int trial = 0; trial < draws; ++trial) {
        const std::size_t d = 1 + rng() % 5;
        std::vector<double> chi(d), xi(d), B(d), zero(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            chi[i] = u(rng) - 0.5;
            xi[i] = 2 * u(rng);
            B[i] = 1e-3 + u(rng);
        }
        const double L = 0.5 + 3 * u(rng);
        const double alpha = (0.05 + 1.9 * u(rng)) / L;
        mismatches += wecans_i_shots(chi, xi, L, alpha, zero).shots != icans_shots(chi, xi, L, alpha).shots;
        mismatches += wecans_g_shots(chi, xi, L, alpha, 0.0).shots != gcans_shots(chi, xi, L, alpha).shots;
        const double A = 0.01 + u(rng);
        const std::int64_t s_min = 2 + static_cast<std::int64_t>(rng() % 200);
        double bplus = 0;
        for (double b : B) {
            bplus += std::sqrt(b);
        }
        const auto plan = we_adam_shots(A, B, 0.0, s_min);
        for (std::size_t i = 0; i < d; ++i) {
            mismatches += plan.shots[i] != round_up_shots(2 * std::sqrt(B[i]) * bplus / A, s_min);
        }
    }

    TaskSpec spec;
    const auto task = build_task(spec);
    int trace_mismatches = 0;
    const CostModels time_only{LatencyModel::superconducting(), std::nullopt, std::nullopt};
    const CostModels zero_overhead{LatencyModel::superconducting(), std::nullopt, LatencyModel{1e-5, 0, 0, "s"}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        OptimizerConfig cfg;
        cfg.budget.max_time = 2000;
        cfg.estimator = task.estimator;
        cfg.kind = OptimizerKind::AdamCans;
        const auto theta0 = initial_parameters(task.circuit.num_params(), seed);
        Rng r1(seed), r2(seed);
        const auto a = optimize(task.circuit, task.observable, theta0, cfg, time_only, r1);
        cfg.kind = OptimizerKind::WeAdamCans;
        const auto w = optimize(task.circuit, task.observable, theta0, cfg, zero_overhead, r2);
        trace_mismatches += !(a == w);
    }
    return {mismatches == 0 && trace_mismatches == 0,
            "zero-overhead reductions: " + std::to_string(mismatches) + " integer mismatches over " +
                std::to_string(draws) + " draws x 3 rules; we-AdamCANS vs AdamCANS traces differ on " +
                std::to_string(trace_mismatches) + "/10 seeds"};
}

Outcome gradient_correctness() {
    const EstimatorOptions exact{GroupAllocation::WeightedRandom, EvaluationMode::Exact};
    std::mt19937_64 rng(314);
    double worst = 0;
    int instances = 0;
    const auto h2 = load_observable(std::string(WECANS_DATA_DIR) + "/hamiltonians/h2_jw.json");
    for (auto family : {AnsatzKind::RandomPauli, AnsatzKind::HardwareEfficient, AnsatzKind::IsingRy}) {
        for (int k = 0; k < 20; ++k) {
            TaskSpec spec;
            spec.ansatz = family;
            spec.depth = 1 + rng() % 3;
            spec.task_seed = rng();
            if (family == AnsatzKind::RandomPauli) {
                spec.kind = TaskKind::Compile;
                spec.n = 1 + rng() % 4;
            } else if (family == AnsatzKind::HardwareEfficient) {
                spec.kind = TaskKind::HamiltonianFile;
                spec.hamiltonian_path = std::string(WECANS_DATA_DIR) + "/hamiltonians/h2_jw.json";
                spec.n = h2.n_qubits();
            } else {
                spec.kind = TaskKind::Tfim;
                spec.n = 2 + rng() % 4;
            }
            const auto task = build_task(spec);
            std::vector<double> theta(task.circuit.num_params());
            std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
            for (auto &t : theta) {
                t = angle(rng);
            }
            Rng unused(0);
            const auto g = i_evaluate(task.circuit, task.observable, theta,
                                      ShotPlan::uniform(theta.size(), 2 * task.observable.num_groups()), exact,
                                      unused);
            const auto fd = oracle::fd_gradient(task.circuit, task.observable, theta, 1e-5);
            for (std::size_t i = 0; i < theta.size(); ++i) {
                worst = std::max(worst, std::abs(g.grad[i] - fd[i]));
            }
            ++instances;
        }
    }
    return {worst <= 1e-6, "parameter shift vs central differences (h = 1e-5) on " + std::to_string(instances) +
                               " instances over 3 ansatz families: max |diff| = " + fmt(worst) + " (<= 1e-6)"};
}

Outcome estimator_calibration() {
    std::mt19937_64 gen(4242);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    int unbiased = 0;
    double worst_z = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = oracle::random_circuit(4, 24, gen);
        std::vector<double> theta(c.num_params());
        for (auto &t : theta) {
            t = angle(gen);
        }
        const auto obs = group_qubitwise(oracle::random_terms(4, 8, gen));
        const auto state = run(c, theta);
        Rng rng(gen());
        const auto est = estimate_cost(state, obs, 100000, {}, rng);
        const double z = std::abs(est.mean - exact_expectation(state, obs)) / std::sqrt(est.single_shot_variance / 1e5);
        worst_z = std::max(worst_z, z);
        unbiased += z <= 4.0;
    }

    // Variance calibration at s_i = 1000 on a 3-qubit random instance.
    const auto c = oracle::random_circuit(3, 14, gen);
    const auto obs = group_qubitwise(oracle::random_terms(3, 6, gen));
    std::vector<double> theta(c.num_params());
    for (auto &t : theta) {
        t = angle(gen);
    }
    const std::size_t d = theta.size();
    const int runs = 500;
    std::vector<double> sum(d, 0), sum_sq(d, 0), s_mean(d, 0);
    Rng rng(gen());
    for (int k = 0; k < runs; ++k) {
        const auto g = i_evaluate(c, obs, theta, ShotPlan::uniform(d, 1000), {}, rng);
        for (std::size_t i = 0; i < d; ++i) {
            sum[i] += g.grad[i];
            sum_sq[i] += g.grad[i] * g.grad[i];
            s_mean[i] += g.variance[i] / runs;
        }
    }
    double lo = 1e300, hi = 0;
    for (std::size_t i = 0; i < d; ++i) {
        const double mean = sum[i] / runs;
        const double var = (sum_sq[i] - runs * mean * mean) / (runs - 1);
        const double ratio = var / (s_mean[i] / 1000.0);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    const bool ok = unbiased == 10 && lo >= 0.5 && hi <= 2.0;
    return {ok, "WRS estimate within 4 SE on " + std::to_string(unbiased) + "/10 observables (max z " + fmt(worst_z) +
                    "); Var(g_i) / (mean S_i / s_i) in [" + fmt(lo) + ", " + fmt(hi) + "] over " +
                    std::to_string(d) + " components"};
}

Outcome cost_clock() {
    CostClock time(LatencyModel::superconducting(), LatencyModel::braket_rigetti());
    const auto inc = time.charge_iteration(1000, 8, 1);
    const bool ok = inc.time == 4.81 && inc.econ == 2.75;
    return {ok, "dt = " + fmt(inc.time) + " s (exactly 4.81: " + (inc.time == 4.81 ? "yes" : "no") + "), cost = $" +
                    fmt(inc.econ) + " (exactly 2.75: " + (inc.econ == 2.75 ? "yes" : "no") + ")"};
}

Outcome compile_benchmark(const fs::path &dir) {
    const double budget = 2000;
    const auto s = sweep(dir, {"--task", "compile", "--n", "3", "--depth", "3", "--seeds", "0..9", "--optimizers",
                               "we-adamcans,icans,adam-100", "--latency", "superconducting", "--budget-time", "2000"},
                         Axis::SimTime, 1e-3);
    const auto &we = find(s, "we-adamcans");
    const auto &ic = find(s, "icans");
    const auto &ad = find(s, "adam-100");
    const auto r_icans = speedup_lower_bound(we.time_to_threshold, ic.time_to_threshold, budget);
    const auto r_adam = speedup_lower_bound(we.time_to_threshold, ad.time_to_threshold, budget);
    const bool ok = r_icans && r_adam && *r_icans > 1.0 && *r_adam > 1.0 && *r_icans >= 1.5;
    return {ok, "median time to 1e-3: we-AdamCANS " + fmt_time(we.time_to_threshold, budget, " s") +
                    ", iCANS " + fmt_time(ic.time_to_threshold, budget, " s") + ", Adam-100 " +
                    fmt_time(ad.time_to_threshold, budget, " s") + "; speedup vs iCANS " +
                    (ic.time_to_threshold ? "" : ">= ") +
                    (r_icans ? fmt(*r_icans) : "n/a") + " (target 1.5), vs Adam-100 " +
                    (ad.time_to_threshold ? "" : ">= ") + (r_adam ? fmt(*r_adam) : "n/a")};
}

Outcome tfim_benchmark(const fs::path &dir) {
    const double budget = 40000;
    const auto s = sweep(dir, {"--task", "tfim", "--n", "6", "--depth", "3", "--J", "1", "--g", "1.5", "--seeds",
                               "0..9", "--optimizers", "we-adamcans,icans", "--latency", "superconducting",
                               "--budget-time", "40000"},
                         Axis::SimTime, 1e-2);
    const auto &we = find(s, "we-adamcans");
    const auto &ic = find(s, "icans");
    const auto r = speedup_lower_bound(we.time_to_threshold, ic.time_to_threshold, budget);
    const bool ok = r && *r >= 2.0;
    return {ok, "median time to dE/(J N) <= 1e-2: we-AdamCANS " + fmt_time(we.time_to_threshold, budget, " s") +
                    ", iCANS " + fmt_time(ic.time_to_threshold, budget, " s") + "; speedup " +
                    (ic.time_to_threshold ? "" : ">= ") + (r ? fmt(*r) : "n/a") + " (target 2)"};
}

Outcome shot_frugality(const fs::path &dir) {
    const double budget = 5e7;
    const auto s = sweep(dir, {"--task", "compile", "--n", "3", "--depth", "3", "--seeds", "0..9", "--optimizers",
                               "adamcans,icans,gcans", "--latency", "zero", "--budget-shots", "50000000"},
                         Axis::Shots, 1e-3);
    const auto &ad = find(s, "adamcans");
    const auto &ic = find(s, "icans");
    const auto &gc = find(s, "gcans");
    auto le = [&](const cli::OptimizerSummary &o) {
        return ad.time_to_threshold && (!o.time_to_threshold || *ad.time_to_threshold <= *o.time_to_threshold);
    };
    return {le(ic) && le(gc), "median total shots to exact cost <= 1e-3 at zero latency: AdamCANS " +
                                  fmt_time(ad.time_to_threshold, budget, " shots") + ", iCANS " +
                                  fmt_time(ic.time_to_threshold, budget, " shots") + ", gCANS " +
                                  fmt_time(gc.time_to_threshold, budget, " shots")};
}

Outcome monotone_accounting(const std::vector<fs::path> &dirs) {
    std::size_t files = 0, violations = 0;
    for (const auto &dir : dirs) {
        if (!fs::exists(dir / "manifest.json")) {
            continue;
        }
        const auto manifest = cli::load_manifest(dir / "manifest.json");
        for (const auto &e : manifest.entries) {
            const auto file = load_trace(dir / e.trace);
            ++files;
            const auto &recs = file.trace.records;
            for (std::size_t k = 1; k < recs.size(); ++k) {
                violations += recs[k].sim_time < recs[k - 1].sim_time;
                violations += recs[k].econ_cost < recs[k - 1].econ_cost;
                violations += recs[k].total_shots < recs[k - 1].total_shots;
            }
            if (recs.size() >= 2) {
                // every record before the last must still be inside the budget
                const auto &b = e.cell.optimizer.budget;
                const auto &prev = recs[recs.size() - 2];
                violations += b.max_time && prev.sim_time >= *b.max_time;
                violations += b.max_cost && prev.econ_cost >= *b.max_cost;
                violations += b.max_shots && prev.total_shots >= *b.max_shots;
                violations += b.max_iterations && prev.k + 1 >= *b.max_iterations;
            }
        }
    }
    return {files > 0 && violations == 0, std::to_string(files) + " emitted traces checked: " +
                                              std::to_string(violations) +
                                              " monotonicity or budget-overshoot violations"};
}

Outcome determinism(const fs::path &dir) {
    fs::create_directories(dir);
    int identical = 0;
    const std::vector<std::string> optimizers{"we-adamcans", "icans", "gcans", "adam-100"};
    for (const auto &opt : optimizers) {
        std::vector<std::string> contents;
        for (int rep = 0; rep < 2; ++rep) {
            const auto path = dir / (opt + "_" + std::to_string(rep) + ".ndjson");
            const std::string cmd = std::string("\"") + WECANS_CLI_PATH + "\" run --task compile --n 3 --depth 3 " +
                                    "--optimizer " + opt + " --seed 3 --latency superconducting " +
                                    "--budget-time 500 --out \"" + path.string() + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                return {false, "wecans run failed for " + opt};
            }
            contents.push_back(slurp(path) + slurp(fs::path(path).replace_extension(".csv")));
        }
        identical += !contents[0].empty() && contents[0] == contents[1];
    }
    return {identical == static_cast<int>(optimizers.size()),
            std::to_string(identical) + "/" + std::to_string(optimizers.size()) +
                " repeated CLI runs produced byte-identical NDJSON and CSV files"};
}

} // namespace

int main() {
    const auto root = scratch_root();
    criterion(1, closed_forms);
    criterion(2, limit_reductions);
    criterion(3, gradient_correctness);
    criterion(4, estimator_calibration);
    criterion(5, cost_clock);
    criterion(6, [&] { return compile_benchmark(root / "compile"); });
    criterion(7, [&] { return tfim_benchmark(root / "tfim"); });
    criterion(8, [&] { return shot_frugality(root / "zero_latency"); });
    criterion(9, [&] { return monotone_accounting({root / "compile", root / "tfim", root / "zero_latency"}); });
    criterion(10, [&] { return determinism(root / "determinism"); });
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
