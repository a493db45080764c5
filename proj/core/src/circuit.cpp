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

#include "wecans/circuit.hpp"

#include <stdexcept>

namespace wecans {

Gate Gate::fixed_rotation(Pauli axis, std::size_t q, double angle) {
    if (axis == Pauli::I) {
        throw std::invalid_argument("rotation generator must be X, Y or Z");
    }
    return Gate{GateKind::FixedRotation, axis, q, q, 0, angle};
}
Gate Gate::h(std::size_t q) { return Gate{GateKind::H, Pauli::I, q, q, 0, 0.0}; }
Gate Gate::sdg(std::size_t q) { return Gate{GateKind::Sdg, Pauli::I, q, q, 0, 0.0}; }
Gate Gate::cz(std::size_t a, std::size_t b) {
    if (a == b) {
        throw std::invalid_argument("CZ needs two distinct qubits");
    }
    return Gate{GateKind::CZ, Pauli::I, a, b, 0, 0.0};
}
Gate Gate::cnot(std::size_t control, std::size_t target) {
    if (control == target) {
        throw std::invalid_argument("CNOT needs two distinct qubits");
    }
    return Gate{GateKind::CNOT, Pauli::I, control, target, 0, 0.0};
}

ParametricCircuit::ParametricCircuit(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > PauliString::max_qubits) {
        throw std::invalid_argument("ParametricCircuit: bad qubit count");
    }
}

void ParametricCircuit::check_qubit(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("ParametricCircuit: qubit index out of range");
    }
}

std::size_t ParametricCircuit::add_rotation(Pauli axis, std::size_t q) {
    if (axis == Pauli::I) {
        throw std::invalid_argument("rotation generator must be X, Y or Z");
    }
    check_qubit(q);
    const std::size_t k = param_gate_.size();
    param_gate_.push_back(gates_.size());
    gates_.push_back(Gate{GateKind::Rotation, axis, q, q, k, 0.0});
    return k;
}

void ParametricCircuit::add_fixed(const Gate &gate) {
    if (gate.kind == GateKind::Rotation) {
        throw std::invalid_argument("use add_rotation for parametric gates");
    }
    check_qubit(gate.q0);
    check_qubit(gate.q1);
    gates_.push_back(gate);
}

void ParametricCircuit::append_inverse(const ParametricCircuit &other, std::span<const double> theta) {
    if (other.n_qubits() != n_) {
        throw std::invalid_argument("append_inverse: qubit count mismatch");
    }
    if (theta.size() != other.num_params()) {
        throw std::invalid_argument("append_inverse: parameter count mismatch");
    }
    for (auto it = other.gates_.rbegin(); it != other.gates_.rend(); ++it) {
        switch (it->kind) {
        case GateKind::Rotation:
            add_fixed(Gate::fixed_rotation(it->axis, it->q0, -theta[it->param]));
            break;
        case GateKind::FixedRotation:
            add_fixed(Gate::fixed_rotation(it->axis, it->q0, -it->angle));
            break;
        case GateKind::Sdg:
            // S = Sdg^3
            for (int rep = 0; rep < 3; ++rep) {
                add_fixed(Gate::sdg(it->q0));
            }
            break;
        default:
            // H, CZ and CNOT are self-inverse
            add_fixed(*it);
            break;
        }
    }
}

} // namespace wecans
