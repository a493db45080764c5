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
 * @file cost_clock.hpp
 * Linear overhead model c1 * shots + c2 * switches + c3 * rounds and the
 * simulated clock that accumulates it over a run.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wecans {

struct LatencyModel {
    /// Per shot.
    double c1 = 0.0;
    /// Per circuit switch.
    double c2 = 0.0;
    /// Per communication round.
    double c3 = 0.0;
    std::string unit = "s";

    /// Throws std::invalid_argument on negative or non-finite coefficients.
    void validate() const;

    static LatencyModel superconducting() { return {1e-5, 0.1, 4.0, "s"}; }
    static LatencyModel braket_rigetti() { return {3.5e-4, 0.3, 0.0, "USD"}; }

    friend bool operator==(const LatencyModel &, const LatencyModel &) = default;
};

/// Parses {"c1": .., "c2": .., "c3": .., "unit": ..}; unit defaults to "s".
LatencyModel parse_latency(std::string_view json_text);
/// Throws IoError when the file cannot be read.
LatencyModel load_latency(const std::filesystem::path &path);

/// c1 * shots + c2 * switches + c3 * rounds.
double iteration_cost(const LatencyModel &model, std::int64_t shots, std::int64_t switches, std::int64_t rounds);

struct ChargeIncrement {
    double time = 0.0;
    double econ = 0.0;
};

/**
 * Simulated wall-clock time and monetary cost of a run. Time is charged with
 * the time model; cost with the price model when one is set and otherwise
 * with the time model, so a run without prices reads the same on both axes.
 */
class CostClock {
  public:
    explicit CostClock(LatencyModel time_model, std::optional<LatencyModel> price_model = std::nullopt);

    /// Throws std::invalid_argument on negative counts.
    ChargeIncrement charge_iteration(std::int64_t shots, std::int64_t switches, std::int64_t rounds = 1);

    [[nodiscard]] double sim_time() const { return sim_time_; }
    [[nodiscard]] double econ_cost() const { return econ_cost_; }
    [[nodiscard]] std::int64_t total_shots() const { return total_shots_; }
    [[nodiscard]] std::int64_t total_switches() const { return total_switches_; }
    [[nodiscard]] std::int64_t total_rounds() const { return total_rounds_; }
    [[nodiscard]] const LatencyModel &time_model() const { return time_; }
    [[nodiscard]] const LatencyModel &price_model() const { return price_ ? *price_ : time_; }

  private:
    LatencyModel time_;
    std::optional<LatencyModel> price_;
    double sim_time_ = 0.0;
    double econ_cost_ = 0.0;
    std::int64_t total_shots_ = 0;
    std::int64_t total_switches_ = 0;
    std::int64_t total_rounds_ = 0;
};

inline constexpr double kOverheadSentinel = 1e12;

struct OverheadRatio {
    /// R = (c2 sum m_i + c3) / c1.
    double total = 0.0;
    /// R_i = (c2 m_i + c3 / d) / c1.
    std::vector<double> per_component;
    /// Set when c1 = 0 with a nonzero overhead: the ratios are the sentinel
    /// (split evenly over components) rather than a quotient.
    bool sentinel = false;
};

/// Overhead ratios for switch counts m (one per component, d = m.size()).
OverheadRatio overhead_ratios(const LatencyModel &model, std::span<const double> switches,
                              double sentinel = kOverheadSentinel);

} // namespace wecans
