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
 * @file tasks.hpp
 * Benchmark problems: the compiling task, the transverse-field Ising chain
 * and Hamiltonians read from JSON files, with their ansatz circuits.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wecans/circuit.hpp"
#include "wecans/gradient.hpp"
#include "wecans/observable.hpp"

namespace wecans {

enum class TaskKind { Compile, Tfim, HamiltonianFile };

enum class AnsatzKind {
    /// Layers of one rotation about a random axis per qubit, then a CZ chain.
    RandomPauli,
    /// Layers of RX and RZ per qubit, then a CNOT chain.
    HardwareEfficient,
    /// An RY layer, then layers of a CZ chain followed by an RY layer.
    IsingRy,
};

std::string_view task_name(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);
/// "random-pauli", "hea", "ising-ry".
std::string_view ansatz_name(AnsatzKind kind);
AnsatzKind parse_ansatz_kind(std::string_view name);

struct TaskSpec {
    TaskKind kind = TaskKind::Compile;
    std::size_t n = 3;
    std::size_t depth = 3;
    /// Unset selects the task's own ansatz.
    std::optional<AnsatzKind> ansatz;
    /// Seeds the random-Pauli rotation axes and the compile target.
    std::uint64_t task_seed = 0;
    double coupling = 1.0;
    double field = 1.5;
    std::string hamiltonian_path;
};

AnsatzKind default_ansatz(TaskKind kind);
std::size_t ansatz_param_count(AnsatzKind kind, std::size_t n, std::size_t depth);

/// Rotation axes for the random-Pauli ansatz, layer-major, drawn from `seed`.
std::vector<Pauli> random_axes(std::size_t n, std::size_t depth, std::uint64_t seed);

ParametricCircuit random_pauli_ansatz(std::size_t n, std::size_t depth, const std::vector<Pauli> &axes);
ParametricCircuit hardware_efficient_ansatz(std::size_t n, std::size_t depth);
ParametricCircuit ising_ry_ansatz(std::size_t n, std::size_t depth);

struct Task {
    TaskSpec spec;
    AnsatzKind ansatz = AnsatzKind::RandomPauli;
    ParametricCircuit circuit{1};
    Observable observable;
    EstimatorOptions estimator;
    /// Compile only: the target parameters theta*.
    std::vector<double> target;
    /// Lowest achievable cost (0 for compile, ground energy otherwise; NaN
    /// when the system is too large for dense diagonalization).
    double reference = 0.0;
    /// Divisor for reporting (cost - reference); J * n for the Ising chain.
    double scale = 1.0;
};

inline constexpr std::size_t kMaxDenseQubits = 12;

/**
 * Builds a task. Throws std::invalid_argument for out-of-range numbers,
 * IoError when a Hamiltonian file cannot be read and TaskError when the
 * Hamiltonian file and the requested qubit count disagree.
 */
Task build_task(const TaskSpec &spec);

/// Smallest eigenvalue of a Pauli-sum observable by dense diagonalization.
double ground_state_energy(const Observable &obs);

/// Initial parameters uniform in [0, 2 pi), drawn from `seed`.
std::vector<double> initial_parameters(std::size_t d, std::uint64_t seed);

} // namespace wecans
