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
 * @file statevector.hpp
 * Dense statevector simulation, exact expectation values and shot sampling
 * of measurement groups.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wecans/circuit.hpp"
#include "wecans/observable.hpp"

namespace wecans {

using Rng = std::mt19937_64;
using complex_t = std::complex<double>;

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<complex_t> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const { return amps_; }
    [[nodiscard]] double norm() const;

    /// theta is only read for GateKind::Rotation.
    void apply(const Gate &gate, std::span<const double> theta = {});
    /// exp(-i angle P / 2) on qubit q.
    void apply_rotation(Pauli axis, std::size_t q, double angle);
    void apply_h(std::size_t q);
    void apply_sdg(std::size_t q);
    void apply_cz(std::size_t a, std::size_t b);
    void apply_cnot(std::size_t control, std::size_t target);

  private:
    std::size_t n_;
    std::vector<complex_t> amps_;
};

/// |psi(theta)> = U(theta)|0...0>. Throws std::invalid_argument on a
/// parameter-count mismatch.
StateVector run(const ParametricCircuit &circuit, std::span<const double> theta);

/// <psi|P|psi> for one Pauli string.
double pauli_expectation(const StateVector &state, const PauliString &p);

/// <psi|H|psi>, constant term included.
double exact_expectation(const StateVector &state, const Observable &obs);

/// Exact expectation of the measured part of group j (constant excluded).
double exact_group_expectation(const StateVector &state, const Observable &obs, std::size_t j);

/// Sufficient statistics of a batch of single-shot values.
struct ShotMoments {
    std::int64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    [[nodiscard]] double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
    /// Unbiased sample variance; requires count >= 2.
    [[nodiscard]] double sample_variance() const;
};

/**
 * Measurement of one group on a fixed state. The basis-rotated outcome
 * distribution and the per-outcome group values are computed once and
 * reused for every batch of shots drawn from this sampler.
 */
class GroupSampler {
  public:
    GroupSampler(const StateVector &state, const Observable &obs, std::size_t group);

    /// Individual single-shot values by inverse-CDF lookup.
    std::vector<double> sample(std::int64_t shots, Rng &rng) const;

    /// Same distribution as sample(), drawn as a multinomial over outcomes.
    ShotMoments sample_moments(std::int64_t shots, Rng &rng) const;

    [[nodiscard]] double exact_mean() const;
    [[nodiscard]] std::span<const double> probabilities() const { return probs_; }
    [[nodiscard]] std::span<const double> outcome_values() const { return values_; }

  private:
    std::vector<double> probs_;
    std::vector<double> cdf_;
    std::vector<double> values_;
};

/// Rotates into group j's measurement basis (H for X, Sdg then H for Y) and
/// returns single-shot values sum_{i in G_j} c_i * (+-1 eigenvalue); for the
/// projector observable a shot is 0 on the all-zeros outcome and 1 otherwise.
std::vector<double> sample_group(const StateVector &state, const Observable &obs, std::size_t group,
                                 std::int64_t shots, Rng &rng);

/// Multinomial draw of `trials` over `probs` by conditional binomials.
std::vector<std::int64_t> sample_multinomial(std::int64_t trials, std::span<const double> probs, Rng &rng);

} // namespace wecans
