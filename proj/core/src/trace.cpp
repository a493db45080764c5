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

#include "wecans/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wecans/errors.hpp"

namespace wecans {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

nlohmann::json record_json(const IterationRecord &rec) {
    nlohmann::json j;
    j["type"] = "iteration";
    j["k"] = rec.k;
    if (!rec.theta.empty()) {
        j["theta"] = rec.theta;
    }
    j["exact_cost"] = rec.exact_cost;
    j["sim_time"] = rec.sim_time;
    j["econ_cost"] = rec.econ_cost;
    j["total_shots"] = rec.total_shots;
    j["shot_plan"] = rec.shot_plan;
    j["grad_norm_est"] = rec.grad_norm_est;
    j["fallback"] = rec.fallback;
    return j;
}

template <class T> T field(const nlohmann::json &j, const char *key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("trace record lacks \"") + key + "\"");
    }
    return j.at(key).get<T>();
}

/// Index of the last x <= t, or -1.
std::ptrdiff_t last_at_or_before(const Series &s, double t) {
    const auto it = std::upper_bound(s.x.begin(), s.x.end(), t);
    return (it - s.x.begin()) - 1;
}

std::optional<double> median_of(std::vector<double> &values) {
    if (values.empty()) {
        return std::nullopt;
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

} // namespace

void write_trace(std::ostream &out, const RunTrace &trace, const nlohmann::json &config) {
    nlohmann::json header;
    header["type"] = "header";
    header["config"] = config;
    header["alpha"] = trace.alpha;
    header["lipschitz"] = trace.lipschitz;
    header["overhead_sentinel"] = trace.overhead_sentinel;
    out << header.dump() << '\n';
    for (const auto &rec : trace.records) {
        out << record_json(rec).dump() << '\n';
    }
}

void write_trace_csv(std::ostream &out, const RunTrace &trace) {
    out << "k,sim_time,econ_cost,total_shots,exact_cost\n";
    for (const auto &rec : trace.records) {
        out << rec.k << ',' << shortest(rec.sim_time) << ',' << shortest(rec.econ_cost) << ',' << rec.total_shots
            << ',' << shortest(rec.exact_cost) << '\n';
    }
}

void trace_emit(const RunTrace &trace, const nlohmann::json &config, const std::filesystem::path &path) {
    auto csv_path = path;
    csv_path.replace_extension(".csv");
    std::ofstream out(path, std::ios::binary);
    std::ofstream csv(csv_path, std::ios::binary);
    if (!out || !csv) {
        throw IoError("cannot write trace " + path.string());
    }
    write_trace(out, trace, config);
    write_trace_csv(csv, trace);
    out.flush();
    csv.flush();
    if (!out || !csv) {
        throw IoError("failed writing trace " + path.string());
    }
}

TraceFile parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    TraceFile file;
    bool have_header = false;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto j = nlohmann::json::parse(line);
            const auto type = field<std::string>(j, "type");
            if (!have_header) {
                if (type != "header") {
                    throw std::invalid_argument("trace must start with a header record");
                }
                file.config = j.value("config", nlohmann::json::object());
                file.trace.alpha = field<double>(j, "alpha");
                file.trace.lipschitz = field<double>(j, "lipschitz");
                file.trace.overhead_sentinel = field<bool>(j, "overhead_sentinel");
                have_header = true;
                continue;
            }
            if (type != "iteration") {
                throw std::invalid_argument("unexpected trace record type \"" + type + "\"");
            }
            IterationRecord rec;
            rec.k = field<std::int64_t>(j, "k");
            if (j.contains("theta")) {
                rec.theta = j.at("theta").get<std::vector<double>>();
            }
            rec.exact_cost = field<double>(j, "exact_cost");
            rec.sim_time = field<double>(j, "sim_time");
            rec.econ_cost = field<double>(j, "econ_cost");
            rec.total_shots = field<std::int64_t>(j, "total_shots");
            rec.shot_plan = field<std::vector<std::int64_t>>(j, "shot_plan");
            rec.grad_norm_est = field<double>(j, "grad_norm_est");
            rec.fallback = field<bool>(j, "fallback");
            file.trace.records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed trace: ") + e.what());
    }
    if (!have_header) {
        throw std::invalid_argument("trace has no header record");
    }
    return file;
}

TraceFile load_trace(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open trace " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_trace(ss.str());
}

std::string_view axis_name(Axis axis) {
    switch (axis) {
    case Axis::SimTime:
        return "time";
    case Axis::EconCost:
        return "cost";
    case Axis::Shots:
        return "shots";
    case Axis::Iterations:
        return "iterations";
    }
    throw std::invalid_argument("unknown axis");
}

Axis parse_axis(std::string_view name) {
    for (auto a : {Axis::SimTime, Axis::EconCost, Axis::Shots, Axis::Iterations}) {
        if (axis_name(a) == name) {
            return a;
        }
    }
    throw std::invalid_argument("unknown axis \"" + std::string(name) + "\"");
}

Series trace_series(const RunTrace &trace, Axis axis, double reference, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("trace_series: scale must be positive");
    }
    Series s;
    s.x.reserve(trace.records.size());
    s.y.reserve(trace.records.size());
    for (const auto &rec : trace.records) {
        switch (axis) {
        case Axis::SimTime:
            s.x.push_back(rec.sim_time);
            break;
        case Axis::EconCost:
            s.x.push_back(rec.econ_cost);
            break;
        case Axis::Shots:
            s.x.push_back(static_cast<double>(rec.total_shots));
            break;
        case Axis::Iterations:
            s.x.push_back(static_cast<double>(rec.k + 1));
            break;
        }
        s.y.push_back((rec.exact_cost - reference) / scale);
    }
    return s;
}

std::optional<double> median_at(std::span<const Series> series, double x) {
    std::vector<double> values;
    values.reserve(series.size());
    for (const auto &s : series) {
        const auto idx = last_at_or_before(s, x);
        if (idx >= 0) {
            values.push_back(s.y[static_cast<std::size_t>(idx)]);
        }
    }
    return median_of(values);
}

MedianCurve median_curve(std::span<const Series> series, std::span<const double> grid) {
    if (series.empty()) {
        throw std::invalid_argument("median_curve: no traces");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("median_curve: grid must be strictly increasing");
        }
    }
    MedianCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    std::vector<double> values;
    for (double t : grid) {
        values.clear();
        for (const auto &s : series) {
            const auto idx = last_at_or_before(s, t);
            if (idx >= 0) {
                values.push_back(s.y[static_cast<std::size_t>(idx)]);
            }
        }
        curve.count.push_back(values.size());
        curve.median.push_back(median_of(values).value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    return curve;
}

std::optional<double> time_to_threshold(std::span<const Series> series, double threshold) {
    std::vector<double> events;
    for (const auto &s : series) {
        events.insert(events.end(), s.x.begin(), s.x.end());
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (double t : events) {
        const auto m = median_at(series, t);
        if (m && *m <= threshold) {
            return t;
        }
    }
    return std::nullopt;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) {
        throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    }
    std::vector<double> grid(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

} // namespace wecans
