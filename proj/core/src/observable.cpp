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

#include "wecans/observable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wecans/errors.hpp"

namespace wecans {

char pauli_letter(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits > max_qubits) {
        throw std::invalid_argument("PauliString: too many qubits");
    }
}

PauliString PauliString::parse(std::string_view letters) {
    PauliString out(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q) {
        switch (letters[q]) {
        case 'I':
            break;
        case 'X':
            out.set(q, Pauli::X);
            break;
        case 'Y':
            out.set(q, Pauli::Y);
            break;
        case 'Z':
            out.set(q, Pauli::Z);
            break;
        default:
            throw std::invalid_argument("invalid Pauli letter '" + std::string(1, letters[q]) +
                                        "' in \"" + std::string(letters) + "\"");
        }
    }
    return out;
}

Pauli PauliString::at(std::size_t qubit) const {
    const bool x = (x_ >> qubit) & 1U;
    const bool z = (z_ >> qubit) & 1U;
    if (x && z) {
        return Pauli::Y;
    }
    if (x) {
        return Pauli::X;
    }
    return z ? Pauli::Z : Pauli::I;
}

void PauliString::set(std::size_t qubit, Pauli p) {
    if (qubit >= n_) {
        throw std::out_of_range("PauliString::set: qubit out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    x_ &= ~bit;
    z_ &= ~bit;
    if (p == Pauli::X || p == Pauli::Y) {
        x_ |= bit;
    }
    if (p == Pauli::Z || p == Pauli::Y) {
        z_ |= bit;
    }
}

std::size_t PauliString::y_count() const { return static_cast<std::size_t>(std::popcount(x_ & z_)); }

bool PauliString::qubitwise_commutes(const PauliString &other) const {
    const std::uint64_t both = support() & other.support();
    return ((x_ ^ other.x_) & both) == 0 && ((z_ ^ other.z_) & both) == 0;
}

std::string PauliString::str() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) {
        s[q] = pauli_letter(at(q));
    }
    return s;
}

std::uint64_t Observable::group_x_basis(std::size_t j) const { return group_x_.at(j); }
std::uint64_t Observable::group_y_basis(std::size_t j) const { return group_y_.at(j); }

void Observable::finalize() {
    double measured = 0.0;
    for (const auto &t : terms_) {
        measured += std::abs(t.coeff);
    }
    one_norm_ = measured + std::abs(constant_);

    group_probs_.clear();
    group_x_.clear();
    group_y_.clear();
    if (kind_ == ObservableKind::ZeroProjectorComplement) {
        group_probs_.push_back(1.0);
        group_x_.push_back(0);
        group_y_.push_back(0);
        return;
    }
    for (const auto &group : groups_) {
        double w = 0.0;
        std::uint64_t x = 0;
        std::uint64_t y = 0;
        for (std::size_t idx : group) {
            const auto &p = terms_[idx].pauli;
            w += std::abs(terms_[idx].coeff);
            // qubit-wise commuting members agree on each qubit's letter
            x |= p.x_mask() & ~p.z_mask();
            y |= p.x_mask() & p.z_mask();
        }
        group_probs_.push_back(w / measured);
        group_x_.push_back(x);
        group_y_.push_back(y);
    }
}

Observable group_qubitwise(std::span<const PauliTerm> terms) {
    if (terms.empty()) {
        throw std::invalid_argument("group_qubitwise: empty term list");
    }
    const std::size_t n = terms.front().pauli.size();
    Observable obs;
    obs.n_qubits_ = n;
    for (const auto &t : terms) {
        if (t.pauli.size() != n) {
            throw std::invalid_argument("group_qubitwise: inconsistent Pauli string lengths");
        }
        if (!std::isfinite(t.coeff)) {
            throw std::invalid_argument("group_qubitwise: non-finite coefficient");
        }
        if (t.pauli.is_identity()) {
            obs.constant_ += t.coeff;
        } else if (t.coeff != 0.0) {
            obs.terms_.push_back(t);
        }
    }
    if (obs.terms_.empty()) {
        throw std::invalid_argument("group_qubitwise: no measurable (non-identity) term");
    }

    std::vector<std::size_t> order(obs.terms_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(obs.terms_[a].coeff) > std::abs(obs.terms_[b].coeff);
    });

    for (std::size_t i : order) {
        const auto &p = obs.terms_[i].pauli;
        bool placed = false;
        for (auto &group : obs.groups_) {
            const bool fits = std::all_of(group.begin(), group.end(), [&](std::size_t other) {
                return p.qubitwise_commutes(obs.terms_[other].pauli);
            });
            if (fits) {
                group.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            obs.groups_.push_back({i});
        }
    }
    obs.finalize();
    return obs;
}

double one_norm_bound(const Observable &obs, bool include_constant) {
    return include_constant ? obs.one_norm() : obs.one_norm() - std::abs(obs.constant());
}

Observable build_tfim(std::size_t n, double coupling, double field) {
    if (n < 2) {
        throw std::invalid_argument("build_tfim: need at least 2 sites");
    }
    if (coupling == 0.0 || field == 0.0 || !std::isfinite(coupling) || !std::isfinite(field)) {
        throw std::invalid_argument("build_tfim: J and g must be finite and nonzero");
    }
    Observable obs;
    obs.n_qubits_ = n;
    std::vector<std::size_t> bonds;
    std::vector<std::size_t> fields;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        PauliString p(n);
        p.set(i, Pauli::Z);
        p.set(i + 1, Pauli::Z);
        bonds.push_back(obs.terms_.size());
        obs.terms_.push_back({-coupling, p});
    }
    for (std::size_t i = 0; i < n; ++i) {
        PauliString p(n);
        p.set(i, Pauli::X);
        fields.push_back(obs.terms_.size());
        obs.terms_.push_back({-field, p});
    }
    obs.groups_ = {std::move(bonds), std::move(fields)};
    obs.fixed_split_ = std::vector<double>{std::abs(coupling), std::abs(field)};
    obs.finalize();
    return obs;
}

Observable build_projector_cost(std::size_t n) {
    if (n == 0 || n > PauliString::max_qubits) {
        throw std::invalid_argument("build_projector_cost: bad qubit count");
    }
    Observable obs;
    obs.kind_ = ObservableKind::ZeroProjectorComplement;
    obs.n_qubits_ = n;
    obs.groups_ = {{}};
    obs.finalize();
    obs.one_norm_ = 1.0;
    return obs;
}

Observable parse_observable(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("Hamiltonian JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("terms")) {
        throw std::invalid_argument("Hamiltonian JSON: need \"n_qubits\" and \"terms\"");
    }
    if (!doc["n_qubits"].is_number_integer() || doc["n_qubits"].get<long long>() <= 0) {
        throw std::invalid_argument("Hamiltonian JSON: \"n_qubits\" must be a positive integer");
    }
    const auto n = doc["n_qubits"].get<std::size_t>();
    if (!doc["terms"].is_array()) {
        throw std::invalid_argument("Hamiltonian JSON: \"terms\" must be an array");
    }

    // merge duplicates, keeping first-appearance order
    std::vector<PauliTerm> merged;
    std::map<std::string, std::size_t> index;
    for (const auto &entry : doc["terms"]) {
        if (!entry.is_object() || !entry.contains("coeff") || !entry.contains("pauli")) {
            throw std::invalid_argument("Hamiltonian JSON: each term needs \"coeff\" and \"pauli\"");
        }
        if (!entry["coeff"].is_number()) {
            throw std::invalid_argument("Hamiltonian JSON: coefficient must be a real number");
        }
        if (!entry["pauli"].is_string()) {
            throw std::invalid_argument("Hamiltonian JSON: \"pauli\" must be a string");
        }
        const auto letters = entry["pauli"].get<std::string>();
        if (letters.size() != n) {
            throw std::invalid_argument("Hamiltonian JSON: \"" + letters + "\" does not have " +
                                        std::to_string(n) + " letters");
        }
        const double c = entry["coeff"].get<double>();
        auto p = PauliString::parse(letters);
        auto [it, inserted] = index.emplace(letters, merged.size());
        if (inserted) {
            merged.push_back({c, p});
        } else {
            merged[it->second].coeff += c;
        }
    }
    return group_qubitwise(merged);
}

Observable load_observable(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open Hamiltonian file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_observable(ss.str());
}

} // namespace wecans
