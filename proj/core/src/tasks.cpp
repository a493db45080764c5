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

#include "wecans/tasks.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "wecans/errors.hpp"
#include "wecans/seeding.hpp"
#include "wecans/statevector.hpp"

namespace wecans {

namespace {

constexpr std::size_t kMaxTaskQubits = 20;

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
double unit_draw(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void add_entangler_chain(ParametricCircuit &c, std::size_t n, bool cnot) {
    for (std::size_t q = 0; q + 1 < n; ++q) {
        c.add_fixed(cnot ? Gate::cnot(q, q + 1) : Gate::cz(q, q + 1));
    }
}

template <class Matrix> double lowest_eigenvalue(const Observable &obs) {
    using Scalar = typename Matrix::Scalar;
    const std::size_t dim = std::size_t{1} << obs.n_qubits();
    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &term : obs.terms()) {
        const auto x = term.pauli.x_mask();
        const auto z = term.pauli.z_mask();
        // P |b> = i^{#Y} (-1)^{|b & z|} |b ^ x>
        const std::size_t ny = term.pauli.y_count();
        const std::complex<double> iy = ny % 4 == 0 ? 1.0 : ny % 4 == 1 ? complex_t(0, 1) : ny % 4 == 2 ? -1.0 : complex_t(0, -1);
        for (std::size_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(b & z) % 2) ? -1.0 : 1.0;
            const complex_t v = term.coeff * sign * iy;
            if constexpr (std::is_same_v<Scalar, double>) {
                h(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += v.real();
            } else {
                h(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += v;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("ground_state_energy: eigensolver failed");
    }
    return solver.eigenvalues()(0) + obs.constant();
}

void check_sizes(const TaskSpec &spec) {
    if (spec.n == 0 || spec.n > kMaxTaskQubits) {
        throw std::invalid_argument("qubit count must lie in [1, " + std::to_string(kMaxTaskQubits) + "]");
    }
    if (spec.depth == 0) {
        throw std::invalid_argument("depth must be at least 1");
    }
}

} // namespace

std::string_view task_name(TaskKind kind) {
    switch (kind) {
    case TaskKind::Compile:
        return "compile";
    case TaskKind::Tfim:
        return "tfim";
    case TaskKind::HamiltonianFile:
        return "hamiltonian-file";
    }
    throw std::invalid_argument("unknown task kind");
}

TaskKind parse_task_kind(std::string_view name) {
    for (auto k : {TaskKind::Compile, TaskKind::Tfim, TaskKind::HamiltonianFile}) {
        if (task_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown task \"" + std::string(name) + "\"");
}

std::string_view ansatz_name(AnsatzKind kind) {
    switch (kind) {
    case AnsatzKind::RandomPauli:
        return "random-pauli";
    case AnsatzKind::HardwareEfficient:
        return "hea";
    case AnsatzKind::IsingRy:
        return "ising-ry";
    }
    throw std::invalid_argument("unknown ansatz kind");
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
    for (auto k : {AnsatzKind::RandomPauli, AnsatzKind::HardwareEfficient, AnsatzKind::IsingRy}) {
        if (ansatz_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown ansatz \"" + std::string(name) + "\"");
}

AnsatzKind default_ansatz(TaskKind kind) {
    switch (kind) {
    case TaskKind::Compile:
        return AnsatzKind::RandomPauli;
    case TaskKind::Tfim:
        return AnsatzKind::IsingRy;
    case TaskKind::HamiltonianFile:
        return AnsatzKind::HardwareEfficient;
    }
    throw std::invalid_argument("unknown task kind");
}

std::size_t ansatz_param_count(AnsatzKind kind, std::size_t n, std::size_t depth) {
    switch (kind) {
    case AnsatzKind::RandomPauli:
        return n * depth;
    case AnsatzKind::HardwareEfficient:
        return 2 * n * depth;
    case AnsatzKind::IsingRy:
        return n * (depth + 1);
    }
    throw std::invalid_argument("unknown ansatz kind");
}

std::vector<Pauli> random_axes(std::size_t n, std::size_t depth, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0));
    std::vector<Pauli> axes(n * depth);
    for (auto &a : axes) {
        a = static_cast<Pauli>(1 + rng() % 3);
    }
    return axes;
}

ParametricCircuit random_pauli_ansatz(std::size_t n, std::size_t depth, const std::vector<Pauli> &axes) {
    if (axes.size() != n * depth) {
        throw std::invalid_argument("random_pauli_ansatz: need one axis per qubit and layer");
    }
    ParametricCircuit c(n);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            c.add_rotation(axes[layer * n + q], q);
        }
        add_entangler_chain(c, n, false);
    }
    return c;
}

ParametricCircuit hardware_efficient_ansatz(std::size_t n, std::size_t depth) {
    ParametricCircuit c(n);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            c.add_rotation(Pauli::X, q);
            c.add_rotation(Pauli::Z, q);
        }
        add_entangler_chain(c, n, true);
    }
    return c;
}

ParametricCircuit ising_ry_ansatz(std::size_t n, std::size_t depth) {
    ParametricCircuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.add_rotation(Pauli::Y, q);
    }
    for (std::size_t layer = 0; layer < depth; ++layer) {
        add_entangler_chain(c, n, false);
        for (std::size_t q = 0; q < n; ++q) {
            c.add_rotation(Pauli::Y, q);
        }
    }
    return c;
}

double ground_state_energy(const Observable &obs) {
    if (obs.kind() == ObservableKind::ZeroProjectorComplement) {
        return 0.0;
    }
    if (obs.n_qubits() > kMaxDenseQubits) {
        throw std::invalid_argument("ground_state_energy: too many qubits for dense diagonalization");
    }
    for (const auto &term : obs.terms()) {
        if (term.pauli.y_count() % 2 == 1) {
            return lowest_eigenvalue<Eigen::MatrixXcd>(obs);
        }
    }
    return lowest_eigenvalue<Eigen::MatrixXd>(obs);
}

std::vector<double> initial_parameters(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> theta(d);
    for (auto &t : theta) {
        t = 2.0 * std::numbers::pi * unit_draw(rng);
    }
    return theta;
}

Task build_task(const TaskSpec &spec) {
    check_sizes(spec);
    const AnsatzKind ansatz = spec.ansatz.value_or(default_ansatz(spec.kind));

    auto make_circuit = [&]() {
        switch (ansatz) {
        case AnsatzKind::RandomPauli:
            return random_pauli_ansatz(spec.n, spec.depth, random_axes(spec.n, spec.depth, spec.task_seed));
        case AnsatzKind::HardwareEfficient:
            return hardware_efficient_ansatz(spec.n, spec.depth);
        case AnsatzKind::IsingRy:
            return ising_ry_ansatz(spec.n, spec.depth);
        }
        throw std::invalid_argument("unknown ansatz kind");
    };

    switch (spec.kind) {
    case TaskKind::Compile: {
        const auto ansatz_circuit = make_circuit();
        auto target = initial_parameters(ansatz_circuit.num_params(), mix_seed(spec.task_seed, 1));
        // cost circuit U(theta*)^dagger U(theta), measured against |0...0>
        ParametricCircuit circuit = ansatz_circuit;
        circuit.append_inverse(ansatz_circuit, target);
        return Task{spec, ansatz, std::move(circuit), build_projector_cost(spec.n), EstimatorOptions{},
                    std::move(target), 0.0, 1.0};
    }
    case TaskKind::Tfim: {
        if (spec.n < 2) {
            throw std::invalid_argument("the Ising chain needs at least 2 qubits");
        }
        auto obs = build_tfim(spec.n, spec.coupling, spec.field);
        const double reference = spec.n <= kMaxDenseQubits ? ground_state_energy(obs)
                                                           : std::numeric_limits<double>::quiet_NaN();
        EstimatorOptions est;
        est.allocation = GroupAllocation::FixedRatio;
        return Task{spec, ansatz, make_circuit(), std::move(obs), est, {}, reference,
                    std::abs(spec.coupling) * static_cast<double>(spec.n)};
    }
    case TaskKind::HamiltonianFile: {
        if (spec.hamiltonian_path.empty()) {
            throw std::invalid_argument("hamiltonian-file task needs a Hamiltonian path");
        }
        auto obs = load_observable(spec.hamiltonian_path);
        if (obs.n_qubits() != spec.n) {
            throw TaskError("Hamiltonian acts on " + std::to_string(obs.n_qubits()) + " qubits but the ansatz has " +
                            std::to_string(spec.n));
        }
        const double reference = spec.n <= kMaxDenseQubits ? ground_state_energy(obs)
                                                           : std::numeric_limits<double>::quiet_NaN();
        return Task{spec, ansatz, make_circuit(), std::move(obs), EstimatorOptions{}, {}, reference, 1.0};
    }
    }
    throw std::invalid_argument("unknown task kind");
}

} // namespace wecans
