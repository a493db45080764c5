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
 * @file observable.hpp
 * Weighted Pauli sums, qubit-wise commuting grouping and the benchmark
 * observables (TFIM chain, compiling-task projector, JSON Hamiltonians).
 *
 * Qubit convention: letter q of a Pauli string acts on qubit q, and qubit q
 * is bit q of a computational-basis index.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wecans {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter(Pauli p);

/// Pauli string on up to 63 qubits, stored as X/Z bit masks (Y sets both).
class PauliString {
  public:
    static constexpr std::size_t max_qubits = 63;

    PauliString() = default;
    explicit PauliString(std::size_t n_qubits);

    /// Parses letters from {I, X, Y, Z}; throws std::invalid_argument.
    static PauliString parse(std::string_view letters);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] Pauli at(std::size_t qubit) const;
    void set(std::size_t qubit, Pauli p);

    [[nodiscard]] std::uint64_t x_mask() const { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_; }
    /// Qubits carrying a non-identity letter.
    [[nodiscard]] std::uint64_t support() const { return x_ | z_; }
    [[nodiscard]] std::size_t y_count() const;
    [[nodiscard]] bool is_identity() const { return (x_ | z_) == 0; }

    /// At every qubit the letters agree or one of them is I.
    [[nodiscard]] bool qubitwise_commutes(const PauliString &other) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString pauli;
};

enum class ObservableKind {
    PauliSum,
    /// I - |0..0><0..0|, measured directly in the computational basis.
    ZeroProjectorComplement,
};

/**
 * Immutable measurable observable.
 *
 * Non-identity terms are partitioned into qubit-wise commuting groups; each
 * group j carries the weighted-random-sampling probability
 * p_j = sum_{i in G_j} |c_i| / sum_k |c_k| (over measured terms). The
 * all-identity part is kept as a constant that is never measured.
 */
class Observable {
  public:
    [[nodiscard]] ObservableKind kind() const { return kind_; }
    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }

    /// Measured (non-identity) terms.
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] double constant() const { return constant_; }

    [[nodiscard]] std::size_t num_groups() const { return groups_.size(); }
    [[nodiscard]] const std::vector<std::vector<std::size_t>> &groups() const { return groups_; }
    [[nodiscard]] const std::vector<double> &group_probs() const { return group_probs_; }

    /// Sum of |c_i| over all terms, constant included.
    [[nodiscard]] double one_norm() const { return one_norm_; }

    /// Qubits that must be measured in X (resp. Y) for group j.
    [[nodiscard]] std::uint64_t group_x_basis(std::size_t j) const;
    [[nodiscard]] std::uint64_t group_y_basis(std::size_t j) const;

    /// Per-group weights for deterministic shot splitting, when the
    /// observable defines one (TFIM: J for the bond group, g for the field).
    [[nodiscard]] const std::optional<std::vector<double>> &fixed_split() const {
        return fixed_split_;
    }

    /// Group structure is built by the named constructors below.
    friend Observable group_qubitwise(std::span<const PauliTerm> terms);
    friend Observable build_tfim(std::size_t n, double coupling, double field);
    friend Observable build_projector_cost(std::size_t n);

  private:
    Observable() = default;
    void finalize();

    ObservableKind kind_ = ObservableKind::PauliSum;
    std::size_t n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
    double constant_ = 0.0;
    std::vector<std::vector<std::size_t>> groups_;
    std::vector<double> group_probs_;
    std::vector<std::uint64_t> group_x_;
    std::vector<std::uint64_t> group_y_;
    double one_norm_ = 0.0;
    std::optional<std::vector<double>> fixed_split_;
};

/**
 * Greedy qubit-wise commuting grouping. Terms are visited in order of
 * decreasing |coefficient| (stable, so ties keep input order) and each joins
 * the first existing group it commutes with qubit-wise, else opens a new one.
 * All-identity terms are folded into the constant; zero coefficients dropped.
 *
 * Throws std::invalid_argument on an empty list, mixed string lengths, or
 * when no measurable term remains.
 */
Observable group_qubitwise(std::span<const PauliTerm> terms);

/// sum |c_i|; the all-identity constant is counted unless excluded.
double one_norm_bound(const Observable &obs, bool include_constant = true);

/// H = -J sum Z_i Z_{i+1} - g sum X_i (open chain), grouped {ZZ}, {X} with a
/// fixed J:g shot split. Requires n >= 2 and nonzero J and g.
Observable build_tfim(std::size_t n, double coupling, double field);

/// I - |0..0><0..0|. A single shot returns 0 for the all-zeros outcome, else 1.
Observable build_projector_cost(std::size_t n);

/// Parses {"n_qubits": int, "terms": [{"coeff": real, "pauli": str}, ...]}.
/// Duplicate strings are merged by adding coefficients before grouping.
Observable parse_observable(std::string_view json_text);
Observable load_observable(const std::filesystem::path &path);

} // namespace wecans
