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
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wecans/statevector.hpp"

using namespace wecans;

namespace {

Observable single(const char *p, double c = 1.0) {
    std::vector<PauliTerm> t{{c, PauliString::parse(p)}};
    return group_qubitwise(t);
}

double mean_of(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_SUITE("statevector") {

TEST_CASE("RX examples") {
    ParametricCircuit c(1);
    c.add_rotation(Pauli::X, 0);
    const std::vector<double> zero{0.0};
    const auto s0 = run(c, zero);
    CHECK(std::abs(s0.amplitudes()[0] - complex_t(1, 0)) < 1e-15);
    const std::vector<double> pi{std::numbers::pi};
    const auto s1 = run(c, pi);
    CHECK(std::norm(s1.amplitudes()[1]) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s1.amplitudes()[1] - complex_t(0, -1)) < 1e-12);
}

TEST_CASE("run rejects a parameter-count mismatch") {
    ParametricCircuit c(1);
    c.add_rotation(Pauli::X, 0);
    const std::vector<double> two{0.0, 1.0};
    CHECK_THROWS_AS(run(c, two), std::invalid_argument);
}

TEST_CASE("random 3-qubit circuits match the dense matrix-product oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = oracle::random_circuit(3, 25, rng);
        std::vector<double> theta(c.num_params());
        for (auto &t : theta) {
            t = angle(rng);
        }
        const auto psi = oracle::to_eigen(run(c, theta));
        const auto ref = oracle::circuit_state(c, theta);
        const double fidelity = std::norm(ref.dot(psi));
        CHECK(std::abs(fidelity - 1.0) <= 1e-10);
    }
}

TEST_CASE("expectation examples") {
    StateVector zero(1);
    CHECK(exact_expectation(zero, single("Z")) == doctest::Approx(1.0));
    StateVector plus(1);
    plus.apply_h(0);
    CHECK(std::abs(exact_expectation(plus, single("Z"))) < 1e-15);
}

TEST_CASE("random 4-qubit expectations match the dense oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = oracle::random_circuit(4, 30, rng);
        std::vector<double> theta(c.num_params());
        for (auto &t : theta) {
            t = angle(rng);
        }
        const auto obs = group_qubitwise(oracle::random_terms(4, 8, rng));
        const double got = exact_expectation(run(c, theta), obs);
        const double want =
            oracle::expectation(oracle::circuit_state(c, theta), oracle::observable_matrix(obs));
        CHECK(std::abs(got - want) <= 1e-10);
    }
}

TEST_CASE("sampling examples") {
    Rng rng(3);
    StateVector zero(1);
    for (double v : sample_group(zero, single("Z"), 0, 100, rng)) {
        CHECK(v == 1.0);
    }
    StateVector plus(1);
    plus.apply_h(0);
    for (double v : sample_group(plus, single("X"), 0, 100, rng)) {
        CHECK(v == 1.0);
    }
    const auto shots = sample_group(plus, single("Z"), 0, 100000, rng);
    CHECK(std::abs(mean_of(shots)) <= 3.0 / std::sqrt(1e5));
    CHECK_THROWS_AS(sample_group(plus, single("Z"), 1, 10, rng), std::out_of_range);
}

TEST_CASE("Y-basis measurement uses Sdg then H") {
    StateVector s(1);
    s.apply_rotation(Pauli::X, 0, -std::numbers::pi / 2); // |+i>
    Rng rng(5);
    for (double v : sample_group(s, single("Y"), 0, 50, rng)) {
        CHECK(v == 1.0);
    }
}

TEST_CASE("property: sample means converge to group expectations") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    int within = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const auto c = oracle::random_circuit(3, 12, gen);
        std::vector<double> theta(c.num_params());
        for (auto &t : theta) {
            t = angle(gen);
        }
        const auto state = run(c, theta);
        const auto obs = group_qubitwise(oracle::random_terms(3, 4, gen));
        const std::size_t j = gen() % obs.num_groups();
        Rng rng(gen());
        const auto m = GroupSampler(state, obs, j).sample_moments(100000, rng);
        const double se = std::sqrt(m.sample_variance() / 1e5);
        const double exact = exact_group_expectation(state, obs, j);
        if (std::abs(m.mean() - exact) <= 4 * se + 1e-12) {
            ++within;
        }
    }
    CHECK(within >= 99);
}

TEST_CASE("property: norm drift stays below 1e-10 over 100 gates") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = oracle::random_circuit(5, 100, gen);
        std::vector<double> theta(c.num_params(), 0.37);
        StateVector s(5);
        for (const auto &g : c.gates()) {
            s.apply(g, theta);
            CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("property: run is pure") {
    std::mt19937_64 gen(5);
    const auto c = oracle::random_circuit(4, 40, gen);
    std::vector<double> theta(c.num_params(), 1.1);
    const auto a = run(c, theta);
    const auto b = run(c, theta);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        CHECK(a.amplitudes()[i] == b.amplitudes()[i]);
    }
}

TEST_CASE("multinomial counts sum to the trials") {
    Rng rng(8);
    const std::vector<double> p{0.2, 0.5, 0.3};
    const auto counts = sample_multinomial(1000, p, rng);
    CHECK(counts[0] + counts[1] + counts[2] == 1000);
}

} // TEST_SUITE
