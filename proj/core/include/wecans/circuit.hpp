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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wecans/observable.hpp"

namespace wecans {

enum class GateKind {
    /// exp(-i theta_k A / 2) with theta_k a circuit parameter.
    Rotation,
    /// Same generator form with a frozen angle.
    FixedRotation,
    H,
    Sdg,
    CZ,
    CNOT,
};

struct Gate {
    GateKind kind = GateKind::H;
    Pauli axis = Pauli::I;
    std::size_t q0 = 0;
    /// Target for CNOT, second qubit for CZ.
    std::size_t q1 = 0;
    std::size_t param = 0;
    double angle = 0.0;

    static Gate fixed_rotation(Pauli axis, std::size_t q, double angle);
    static Gate h(std::size_t q);
    static Gate sdg(std::size_t q);
    static Gate cz(std::size_t a, std::size_t b);
    static Gate cnot(std::size_t control, std::size_t target);
};

/**
 * Ordered gate list with a one-to-one map between parameters and rotation
 * gates. Parameter indices are handed out by add_rotation in call order, so
 * every index in [0, num_params) belongs to exactly one gate.
 */
class ParametricCircuit {
  public:
    explicit ParametricCircuit(std::size_t n_qubits);

    /// Appends exp(-i theta A / 2) on qubit q (A in {X, Y, Z}); returns its
    /// parameter index.
    std::size_t add_rotation(Pauli axis, std::size_t q);

    /// Appends a non-parametric gate.
    void add_fixed(const Gate &gate);

    /// Appends the inverse of `other` with its parameters bound to `theta`.
    void append_inverse(const ParametricCircuit &other, std::span<const double> theta);

    [[nodiscard]] std::size_t n_qubits() const { return n_; }
    [[nodiscard]] std::size_t num_params() const { return param_gate_.size(); }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] const Gate &gate_for_param(std::size_t k) const { return gates_.at(param_gate_.at(k)); }

  private:
    void check_qubit(std::size_t q) const;

    std::size_t n_;
    std::vector<Gate> gates_;
    std::vector<std::size_t> param_gate_;
};

} // namespace wecans
