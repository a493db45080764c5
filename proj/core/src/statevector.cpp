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

#include "wecans/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wecans {

namespace {

constexpr complex_t kI{0.0, 1.0};

int parity(std::uint64_t x) { return std::popcount(x) & 1; }

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    amps_.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<complex_t> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > 30 || amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^n");
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::apply_rotation(Pauli axis, std::size_t q, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t bit = std::size_t{1} << q;
    // exp(-i a P/2) = c I - i s P, acting on the (|0>, |1>) pair of qubit q
    for (std::size_t i0 = 0; i0 < amps_.size(); ++i0) {
        if (i0 & bit) {
            continue;
        }
        const std::size_t i1 = i0 | bit;
        const complex_t a0 = amps_[i0];
        const complex_t a1 = amps_[i1];
        switch (axis) {
        case Pauli::X:
            amps_[i0] = c * a0 - kI * s * a1;
            amps_[i1] = -kI * s * a0 + c * a1;
            break;
        case Pauli::Y:
            amps_[i0] = c * a0 - s * a1;
            amps_[i1] = s * a0 + c * a1;
            break;
        case Pauli::Z:
            amps_[i0] = complex_t{c, -s} * a0;
            amps_[i1] = complex_t{c, s} * a1;
            break;
        case Pauli::I:
            throw std::invalid_argument("rotation generator must be X, Y or Z");
        }
    }
}

void StateVector::apply_h(std::size_t q) {
    const double r = std::numbers::sqrt2 / 2.0;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i0 = 0; i0 < amps_.size(); ++i0) {
        if (i0 & bit) {
            continue;
        }
        const complex_t a0 = amps_[i0];
        const complex_t a1 = amps_[i0 | bit];
        amps_[i0] = r * (a0 + a1);
        amps_[i0 | bit] = r * (a0 - a1);
    }
}

void StateVector::apply_sdg(std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            amps_[i] *= -kI;
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps_[i], amps_[i | tbit]);
        }
    }
}

void StateVector::apply(const Gate &gate, std::span<const double> theta) {
    if (gate.q0 >= n_ || gate.q1 >= n_) {
        throw std::out_of_range("StateVector::apply: qubit index out of range");
    }
    switch (gate.kind) {
    case GateKind::Rotation:
        if (gate.param >= theta.size()) {
            throw std::invalid_argument("StateVector::apply: missing parameter");
        }
        apply_rotation(gate.axis, gate.q0, theta[gate.param]);
        break;
    case GateKind::FixedRotation:
        apply_rotation(gate.axis, gate.q0, gate.angle);
        break;
    case GateKind::H:
        apply_h(gate.q0);
        break;
    case GateKind::Sdg:
        apply_sdg(gate.q0);
        break;
    case GateKind::CZ:
        apply_cz(gate.q0, gate.q1);
        break;
    case GateKind::CNOT:
        apply_cnot(gate.q0, gate.q1);
        break;
    }
}

StateVector run(const ParametricCircuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.num_params()) {
        throw std::invalid_argument("run: expected " + std::to_string(circuit.num_params()) +
                                    " parameters, got " + std::to_string(theta.size()));
    }
    StateVector state(circuit.n_qubits());
    for (const auto &gate : circuit.gates()) {
        state.apply(gate, theta);
    }
    return state;
}

double pauli_expectation(const StateVector &state, const PauliString &p) {
    if (p.size() != state.n_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    // P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>
    const auto amps = state.amplitudes();
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    complex_t acc{0.0, 0.0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const complex_t term = std::conj(amps[b ^ x]) * amps[b];
        acc += parity(b & z) ? -term : term;
    }
    static constexpr complex_t kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return (kPhase[p.y_count() % 4] * acc).real();
}

double exact_group_expectation(const StateVector &state, const Observable &obs, std::size_t j) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("exact_group_expectation: qubit count mismatch");
    }
    if (j >= obs.num_groups()) {
        throw std::out_of_range("exact_group_expectation: invalid group index");
    }
    if (obs.kind() == ObservableKind::ZeroProjectorComplement) {
        return 1.0 - std::norm(state.amplitudes()[0]);
    }
    double e = 0.0;
    for (std::size_t idx : obs.groups()[j]) {
        const auto &t = obs.terms()[idx];
        e += t.coeff * pauli_expectation(state, t.pauli);
    }
    return e;
}

double exact_expectation(const StateVector &state, const Observable &obs) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("exact_expectation: qubit count mismatch");
    }
    double e = obs.constant();
    for (std::size_t j = 0; j < obs.num_groups(); ++j) {
        e += exact_group_expectation(state, obs, j);
    }
    return e;
}

double ShotMoments::sample_variance() const {
    if (count < 2) {
        throw std::logic_error("sample variance needs at least two shots");
    }
    const double n = static_cast<double>(count);
    const double m = sum / n;
    return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

GroupSampler::GroupSampler(const StateVector &state, const Observable &obs, std::size_t group) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("GroupSampler: qubit count mismatch");
    }
    if (group >= obs.num_groups()) {
        throw std::out_of_range("GroupSampler: invalid group index");
    }
    const std::size_t dim = state.dim();
    values_.resize(dim);
    probs_.resize(dim);

    if (obs.kind() == ObservableKind::ZeroProjectorComplement) {
        const auto amps = state.amplitudes();
        for (std::size_t b = 0; b < dim; ++b) {
            probs_[b] = std::norm(amps[b]);
            values_[b] = b == 0 ? 0.0 : 1.0;
        }
    } else {
        StateVector rotated = state;
        const std::uint64_t xq = obs.group_x_basis(group);
        const std::uint64_t yq = obs.group_y_basis(group);
        for (std::size_t q = 0; q < state.n_qubits(); ++q) {
            if ((yq >> q) & 1U) {
                rotated.apply_sdg(q);
                rotated.apply_h(q);
            } else if ((xq >> q) & 1U) {
                rotated.apply_h(q);
            }
        }
        const auto amps = rotated.amplitudes();
        for (std::size_t b = 0; b < dim; ++b) {
            probs_[b] = std::norm(amps[b]);
            double v = 0.0;
            for (std::size_t idx : obs.groups()[group]) {
                const auto &t = obs.terms()[idx];
                v += parity(b & t.pauli.support()) ? -t.coeff : t.coeff;
            }
            values_[b] = v;
        }
    }
    cdf_.resize(dim);
    double acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        acc += probs_[b];
        cdf_[b] = acc;
    }
}

std::vector<double> GroupSampler::sample(std::int64_t shots, Rng &rng) const {
    if (shots < 1) {
        throw std::invalid_argument("sample: shots must be positive");
    }
    std::uniform_real_distribution<double> u(0.0, cdf_.back());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (std::int64_t s = 0; s < shots; ++s) {
        const double r = u(rng);
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), r);
        const auto b = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
        out.push_back(values_[b]);
    }
    return out;
}

ShotMoments GroupSampler::sample_moments(std::int64_t shots, Rng &rng) const {
    ShotMoments m;
    if (shots <= 0) {
        return m;
    }
    const auto counts = sample_multinomial(shots, probs_, rng);
    m.count = shots;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) {
            continue;
        }
        const double c = static_cast<double>(counts[b]);
        m.sum += c * values_[b];
        m.sum_sq += c * values_[b] * values_[b];
    }
    return m;
}

double GroupSampler::exact_mean() const {
    double e = 0.0;
    for (std::size_t b = 0; b < probs_.size(); ++b) {
        e += probs_[b] * values_[b];
    }
    return e;
}

std::vector<double> sample_group(const StateVector &state, const Observable &obs, std::size_t group,
                                 std::int64_t shots, Rng &rng) {
    return GroupSampler(state, obs, group).sample(shots, rng);
}

std::vector<std::int64_t> sample_multinomial(std::int64_t trials, std::span<const double> probs, Rng &rng) {
    std::vector<std::int64_t> counts(probs.size(), 0);
    double remaining_mass = 0.0;
    std::size_t last = probs.size();
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] > 0.0) {
            remaining_mass += probs[k];
            last = k;
        }
    }
    if (last == probs.size()) {
        throw std::invalid_argument("sample_multinomial: no outcome has positive probability");
    }
    std::int64_t remaining = trials;
    for (std::size_t k = 0; k < last && remaining > 0; ++k) {
        if (probs[k] <= 0.0) {
            continue;
        }
        const double p = remaining_mass > 0.0 ? std::clamp(probs[k] / remaining_mass, 0.0, 1.0) : 1.0;
        std::int64_t c;
        if (p >= 1.0) {
            c = remaining;
        } else {
            std::binomial_distribution<std::int64_t> bin(remaining, p);
            c = bin(rng);
        }
        counts[k] = c;
        remaining -= c;
        remaining_mass -= probs[k];
    }
    counts[last] += remaining;
    return counts;
}

} // namespace wecans
