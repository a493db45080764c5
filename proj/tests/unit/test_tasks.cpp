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


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wecans/errors.hpp"
#include "wecans/tasks.hpp"

using namespace wecans;

TEST_SUITE("tasks") {

TEST_CASE("task and ansatz names round-trip") {
    for (auto k : {TaskKind::Compile, TaskKind::Tfim, TaskKind::HamiltonianFile}) {
        CHECK(parse_task_kind(task_name(k)) == k);
    }
    for (auto a : {AnsatzKind::RandomPauli, AnsatzKind::HardwareEfficient, AnsatzKind::IsingRy}) {
        CHECK(parse_ansatz_kind(ansatz_name(a)) == a);
    }
    CHECK_THROWS_AS(parse_task_kind("qaoa"), std::invalid_argument);
}

TEST_CASE("parameter counts per ansatz family") {
    CHECK(ansatz_param_count(AnsatzKind::RandomPauli, 3, 3) == 9);
    CHECK(ansatz_param_count(AnsatzKind::HardwareEfficient, 4, 2) == 16);
    CHECK(ansatz_param_count(AnsatzKind::IsingRy, 6, 3) == 24);
    CHECK(random_pauli_ansatz(3, 3, random_axes(3, 3, 1)).num_params() == 9);
    CHECK(hardware_efficient_ansatz(4, 2).num_params() == 16);
    CHECK(ising_ry_ansatz(6, 3).num_params() == 24);
}

TEST_CASE("property: compile cost vanishes at the target for any seed and ansatz") {
    for (auto a : {AnsatzKind::RandomPauli, AnsatzKind::HardwareEfficient, AnsatzKind::IsingRy}) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            TaskSpec spec;
            spec.n = 1 + seed % 4;
            spec.depth = 1 + seed % 3;
            spec.ansatz = a;
            spec.task_seed = seed * 7919;
            const auto task = build_task(spec);
            REQUIRE(task.target.size() == task.circuit.num_params());
            const double c = exact_expectation(run(task.circuit, task.target), task.observable);
            CHECK(std::abs(c) < 1e-12);
            CHECK(task.reference == 0.0);
        }
    }
}

TEST_CASE("compile task differs by seed") {
    TaskSpec a, b;
    b.task_seed = 1;
    CHECK(build_task(a).target != build_task(b).target);
}

TEST_CASE("TFIM reference equals the dense 4x4 minimum eigenvalue") {
    TaskSpec spec;
    spec.kind = TaskKind::Tfim;
    spec.n = 2;
    spec.depth = 1;
    const auto task = build_task(spec);
    const double oracle_min = oracle::min_eigenvalue(oracle::observable_matrix(task.observable));
    CHECK(task.reference == doctest::Approx(oracle_min).epsilon(1e-12));
    // Closed form for the two-site chain: -sqrt(J^2 + 4 g^2).
    CHECK(task.reference == doctest::Approx(-std::sqrt(1.0 + 4 * 2.25)).epsilon(1e-12));
    CHECK(task.scale == 2.0);
    CHECK(task.estimator.allocation == GroupAllocation::FixedRatio);
}

TEST_CASE("ground-state energy matches the dense oracle on complex Hamiltonians") {
    const auto h2 = load_observable(std::string(WECANS_DATA_DIR) + "/hamiltonians/h2_jw.json");
    CHECK(ground_state_energy(h2) ==
          doctest::Approx(oracle::min_eigenvalue(oracle::observable_matrix(h2))).epsilon(1e-10));
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto obs = group_qubitwise(oracle::random_terms(3, 6, rng));
        CHECK(ground_state_energy(obs) ==
              doctest::Approx(oracle::min_eigenvalue(oracle::observable_matrix(obs))).epsilon(1e-10));
    }
}

TEST_CASE("hamiltonian-file tasks check the qubit count") {
    TaskSpec spec;
    spec.kind = TaskKind::HamiltonianFile;
    spec.hamiltonian_path = std::string(WECANS_DATA_DIR) + "/hamiltonians/h2_jw.json";
    spec.n = 4;
    spec.depth = 2;
    const auto task = build_task(spec);
    CHECK(task.ansatz == AnsatzKind::HardwareEfficient);
    CHECK(task.circuit.num_params() == 16);
    spec.n = 3;
    CHECK_THROWS_AS(build_task(spec), TaskError);
    spec.hamiltonian_path = "/nonexistent.json";
    CHECK_THROWS_AS(build_task(spec), IoError);
}

TEST_CASE("out-of-range task numbers are rejected") {
    TaskSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(build_task(spec), std::invalid_argument);
    spec.n = 3;
    spec.depth = 0;
    CHECK_THROWS_AS(build_task(spec), std::invalid_argument);
    TaskSpec tfim;
    tfim.kind = TaskKind::Tfim;
    tfim.n = 1;
    CHECK_THROWS_AS(build_task(tfim), std::invalid_argument);
}

TEST_CASE("initial parameters are deterministic and lie in [0, 2 pi)") {
    const auto a = initial_parameters(50, 9);
    CHECK(a == initial_parameters(50, 9));
    CHECK(a != initial_parameters(50, 10));
    for (double x : a) {
        CHECK(x >= 0.0);
        CHECK(x < 2 * std::numbers::pi);
    }
}

} // TEST_SUITE
