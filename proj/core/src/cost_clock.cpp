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

#include "wecans/cost_clock.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "wecans/errors.hpp"

namespace wecans {

void LatencyModel::validate() const {
    for (double c : {c1, c2, c3}) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument("latency coefficients must be finite and nonnegative");
        }
    }
}

LatencyModel parse_latency(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("latency profile: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("latency profile must be a JSON object");
    }
    LatencyModel model;
    auto read = [&](const char *key, double &out) {
        if (!doc.contains(key) || !doc[key].is_number()) {
            throw std::invalid_argument(std::string("latency profile: missing numeric \"") + key + "\"");
        }
        out = doc[key].get<double>();
    };
    read("c1", model.c1);
    read("c2", model.c2);
    read("c3", model.c3);
    if (doc.contains("unit")) {
        if (!doc["unit"].is_string()) {
            throw std::invalid_argument("latency profile: \"unit\" must be a string");
        }
        model.unit = doc["unit"].get<std::string>();
    }
    model.validate();
    return model;
}

LatencyModel load_latency(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open latency profile " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_latency(ss.str());
}

double iteration_cost(const LatencyModel &model, std::int64_t shots, std::int64_t switches, std::int64_t rounds) {
    // extended precision so that e.g. 1000 * 1e-5 + 8 * 0.1 + 4.0 rounds to 4.81
    using ld = long double;
    const ld total = static_cast<ld>(model.c1) * static_cast<ld>(shots) +
                     static_cast<ld>(model.c2) * static_cast<ld>(switches) +
                     static_cast<ld>(model.c3) * static_cast<ld>(rounds);
    return static_cast<double>(total);
}

CostClock::CostClock(LatencyModel time_model, std::optional<LatencyModel> price_model)
    : time_(std::move(time_model)), price_(std::move(price_model)) {
    time_.validate();
    if (price_) {
        price_->validate();
    }
}

ChargeIncrement CostClock::charge_iteration(std::int64_t shots, std::int64_t switches, std::int64_t rounds) {
    if (shots < 0 || switches < 0 || rounds < 0) {
        throw std::invalid_argument("charge_iteration: counts must be nonnegative");
    }
    ChargeIncrement inc;
    inc.time = iteration_cost(time_, shots, switches, rounds);
    inc.econ = iteration_cost(price_model(), shots, switches, rounds);
    total_shots_ += shots;
    total_switches_ += switches;
    total_rounds_ += rounds;
    // recomputed from the integer totals, so no rounding drift accumulates
    sim_time_ = iteration_cost(time_, total_shots_, total_switches_, total_rounds_);
    econ_cost_ = iteration_cost(price_model(), total_shots_, total_switches_, total_rounds_);
    return inc;
}

OverheadRatio overhead_ratios(const LatencyModel &model, std::span<const double> switches, double sentinel) {
    model.validate();
    if (switches.empty()) {
        throw std::invalid_argument("overhead_ratios: need at least one component");
    }
    using ld = long double;
    const double d = static_cast<double>(switches.size());
    const ld m_total = std::accumulate(switches.begin(), switches.end(), ld{0});
    OverheadRatio out;
    out.per_component.resize(switches.size());
    const ld overhead = static_cast<ld>(model.c2) * m_total + static_cast<ld>(model.c3);
    if (model.c1 == 0.0) {
        if (overhead == 0.0) {
            return out;
        }
        out.sentinel = true;
        out.total = sentinel;
        for (auto &r : out.per_component) {
            r = sentinel / d;
        }
        return out;
    }
    const ld c1 = model.c1;
    out.total = static_cast<double>(overhead / c1);
    for (std::size_t i = 0; i < switches.size(); ++i) {
        const ld r = (static_cast<ld>(model.c2) * switches[i] + static_cast<ld>(model.c3) / static_cast<ld>(d)) / c1;
        out.per_component[i] = static_cast<double>(r);
    }
    return out;
}

} // namespace wecans
