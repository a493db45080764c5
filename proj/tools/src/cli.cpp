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

#include "wecans/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "wecans/errors.hpp"
#include "wecans/seeding.hpp"

namespace wecans::cli {

namespace {

using nlohmann::json;

template <class T> void put_optional(json &j, const char *key, const std::optional<T> &v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

template <class T> std::optional<T> get_optional(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

/// "3..7" (inclusive) or "0,2,5".
std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    auto to_u64 = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw std::invalid_argument("bad seed list \"" + text + "\"");
        }
        return v;
    };
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const auto lo = to_u64(std::string_view(text).substr(0, dots));
        const auto hi = to_u64(std::string_view(text).substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("bad seed range \"" + text + "\"");
        }
        for (auto s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
        return seeds;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        seeds.push_back(to_u64(item));
    }
    if (seeds.empty()) {
        throw std::invalid_argument("empty seed list");
    }
    return seeds;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty optimizer list");
    }
    return out;
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

/// Flags shared by `run` and `sweep`.
struct CellOptions {
    std::string task = "compile";
    std::size_t n = 3;
    std::size_t depth = 3;
    std::string ansatz;
    std::uint64_t task_seed = 0;
    double coupling = 1.0;
    double field = 1.5;
    std::string hamiltonian;
    std::string latency = "superconducting";
    std::string pricing;
    std::string alloc_profile;
    std::optional<double> budget_time;
    std::optional<double> budget_cost;
    std::optional<std::int64_t> budget_shots;
    std::optional<std::int64_t> budget_iterations;
    std::optional<double> alpha;
    std::optional<double> lipschitz;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double epsilon = 1e-8;
    double mu = 0.99;
    std::int64_t s_min = 100;
    double r = 0.75;
    bool clipping = false;
    std::int64_t shots = 100;
    bool exact = false;
    bool record_theta = false;
    std::uint64_t master_seed = 0;
};

void add_cell_options(CLI::App *app, CellOptions &o) {
    app->add_option("--task", o.task, "compile | tfim | hamiltonian-file")->capture_default_str();
    app->add_option("--n", o.n, "Qubits")->capture_default_str();
    app->add_option("--depth", o.depth, "Ansatz layers D")->capture_default_str();
    app->add_option("--ansatz", o.ansatz, "random-pauli | hea | ising-ry (default: the task's own)");
    app->add_option("--task-seed", o.task_seed, "Seed for random axes and the compile target")->capture_default_str();
    app->add_option("--J", o.coupling, "Ising coupling")->capture_default_str();
    app->add_option("--g", o.field, "Ising transverse field")->capture_default_str();
    app->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian JSON for hamiltonian-file");
    app->add_option("--latency", o.latency, "Time model: profile name or JSON file")->capture_default_str();
    app->add_option("--pricing", o.pricing, "Price model for econ_cost (default: same as --latency)");
    app->add_option("--alloc-profile", o.alloc_profile,
                    "Model the latency-aware rules optimize against (default: --latency)");
    app->add_option("--budget-time", o.budget_time, "Stop once simulated time reaches this");
    app->add_option("--budget-cost", o.budget_cost, "Stop once econ_cost reaches this");
    app->add_option("--budget-shots", o.budget_shots, "Stop once total shots reach this");
    app->add_option("--budget-iterations", o.budget_iterations, "Stop after this many iterations");
    app->add_option("--alpha", o.alpha, "Step size (default 1/L)");
    app->add_option("--lipschitz", o.lipschitz, "Lipschitz constant (default d * one-norm)");
    app->add_option("--beta1", o.beta1)->capture_default_str();
    app->add_option("--beta2", o.beta2)->capture_default_str();
    app->add_option("--epsilon", o.epsilon)->capture_default_str();
    app->add_option("--mu", o.mu, "Moving-average constant")->capture_default_str();
    app->add_option("--s-min", o.s_min, "Shot floor for the Adam rules")->capture_default_str();
    app->add_option("--r", o.r, "Step-size clipping rate")->capture_default_str();
    app->add_flag("--clipping", o.clipping, "Also use the clipped step size for the update");
    app->add_option("--shots", o.shots, "Shots per evaluation for sgd/adam")->capture_default_str();
    app->add_flag("--exact", o.exact, "Noise-free evaluations (zero variance)");
    app->add_flag("--record-theta", o.record_theta, "Store parameters in every record");
    app->add_option("--master-seed", o.master_seed)->capture_default_str();
}

RunCell make_cell(const CellOptions &o, const std::string &optimizer, std::uint64_t seed_index) {
    RunCell cell;
    cell.task.kind = parse_task_kind(o.task);
    cell.task.n = o.n;
    cell.task.depth = o.depth;
    if (!o.ansatz.empty()) {
        cell.task.ansatz = parse_ansatz_kind(o.ansatz);
    }
    cell.task.task_seed = o.task_seed;
    cell.task.coupling = o.coupling;
    cell.task.field = o.field;
    cell.task.hamiltonian_path = o.hamiltonian;

    cell.optimizer_label = optimizer;
    auto &cfg = cell.optimizer;
    cfg.alpha = o.alpha;
    cfg.lipschitz = o.lipschitz;
    cfg.beta1 = o.beta1;
    cfg.beta2 = o.beta2;
    cfg.epsilon = o.epsilon;
    cfg.mu = o.mu;
    cfg.s_min = o.s_min;
    cfg.r = o.r;
    cfg.clipping = o.clipping;
    cfg.fixed_shots = o.shots;
    cfg.record_theta = o.record_theta;
    cfg.budget.max_time = o.budget_time;
    cfg.budget.max_cost = o.budget_cost;
    cfg.budget.max_shots = o.budget_shots;
    cfg.budget.max_iterations = o.budget_iterations;
    apply_optimizer_label(optimizer, cfg);
    cfg.validate();

    cell.costs.time = resolve_latency(o.latency);
    if (!o.pricing.empty()) {
        cell.costs.price = resolve_latency(o.pricing);
    }
    if (!o.alloc_profile.empty()) {
        cell.costs.allocation = resolve_latency(o.alloc_profile);
    }
    cell.exact_evaluation = o.exact;
    cell.master_seed = o.master_seed;
    cell.seed_index = seed_index;
    return cell;
}

/// Maps exceptions to exit codes.
template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const TaskError &e) {
        err << "error: " << e.what() << '\n';
        return kTaskMismatch;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }
}

std::string trace_file_name(const RunCell &cell) {
    return cell.optimizer_label + "_seed" + std::to_string(cell.seed_index) + ".ndjson";
}

} // namespace

void apply_optimizer_label(const std::string &label, OptimizerConfig &config) {
    for (std::string_view prefix : {"adam-", "sgd-"}) {
        if (label.starts_with(prefix) && label.size() > prefix.size()) {
            const std::string_view digits = std::string_view(label).substr(prefix.size());
            std::int64_t s = 0;
            auto res = std::from_chars(digits.data(), digits.data() + digits.size(), s);
            if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || s < 1) {
                throw std::invalid_argument("bad shot count in optimizer \"" + label + "\"");
            }
            config.kind = prefix == "adam-" ? OptimizerKind::Adam : OptimizerKind::Sgd;
            config.fixed_shots = s;
            return;
        }
    }
    config.kind = parse_optimizer_kind(label);
}

json to_json(const TaskSpec &spec) {
    json j;
    j["kind"] = task_name(spec.kind);
    j["n"] = spec.n;
    j["depth"] = spec.depth;
    j["ansatz"] = spec.ansatz ? json(ansatz_name(*spec.ansatz)) : json(nullptr);
    j["task_seed"] = spec.task_seed;
    j["J"] = spec.coupling;
    j["g"] = spec.field;
    j["hamiltonian"] = spec.hamiltonian_path;
    return j;
}

TaskSpec task_from_json(const json &j) {
    TaskSpec spec;
    spec.kind = parse_task_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<std::size_t>();
    spec.depth = j.at("depth").get<std::size_t>();
    if (auto a = get_optional<std::string>(j, "ansatz")) {
        spec.ansatz = parse_ansatz_kind(*a);
    }
    spec.task_seed = j.at("task_seed").get<std::uint64_t>();
    spec.coupling = j.at("J").get<double>();
    spec.field = j.at("g").get<double>();
    spec.hamiltonian_path = j.at("hamiltonian").get<std::string>();
    return spec;
}

json to_json(const LatencyModel &model) {
    return json{{"c1", model.c1}, {"c2", model.c2}, {"c3", model.c3}, {"unit", model.unit}};
}

LatencyModel latency_from_json(const json &j) { return parse_latency(j.dump()); }

json to_json(const OptimizerConfig &c) {
    json j;
    j["kind"] = optimizer_name(c.kind);
    put_optional(j, "alpha", c.alpha);
    put_optional(j, "lipschitz", c.lipschitz);
    j["beta1"] = c.beta1;
    j["beta2"] = c.beta2;
    j["epsilon"] = c.epsilon;
    j["mu"] = c.mu;
    j["s_min"] = c.s_min;
    j["r"] = c.r;
    j["clipping"] = c.clipping;
    j["fixed_shots"] = c.fixed_shots;
    json b;
    put_optional(b, "max_time", c.budget.max_time);
    put_optional(b, "max_cost", c.budget.max_cost);
    put_optional(b, "max_shots", c.budget.max_shots);
    put_optional(b, "max_iterations", c.budget.max_iterations);
    j["budget"] = b;
    j["record_theta"] = c.record_theta;
    return j;
}

OptimizerConfig optimizer_from_json(const json &j) {
    OptimizerConfig c;
    c.kind = parse_optimizer_kind(j.at("kind").get<std::string>());
    c.alpha = get_optional<double>(j, "alpha");
    c.lipschitz = get_optional<double>(j, "lipschitz");
    c.beta1 = j.at("beta1").get<double>();
    c.beta2 = j.at("beta2").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.mu = j.at("mu").get<double>();
    c.s_min = j.at("s_min").get<std::int64_t>();
    c.r = j.at("r").get<double>();
    c.clipping = j.at("clipping").get<bool>();
    c.fixed_shots = j.at("fixed_shots").get<std::int64_t>();
    const auto &b = j.at("budget");
    c.budget.max_time = get_optional<double>(b, "max_time");
    c.budget.max_cost = get_optional<double>(b, "max_cost");
    c.budget.max_shots = get_optional<std::int64_t>(b, "max_shots");
    c.budget.max_iterations = get_optional<std::int64_t>(b, "max_iterations");
    c.record_theta = j.at("record_theta").get<bool>();
    c.validate();
    return c;
}

json to_json(const RunCell &cell) {
    json j;
    j["task"] = to_json(cell.task);
    j["optimizer_label"] = cell.optimizer_label;
    j["optimizer"] = to_json(cell.optimizer);
    json costs;
    costs["time"] = to_json(cell.costs.time);
    costs["price"] = cell.costs.price ? to_json(*cell.costs.price) : json(nullptr);
    costs["allocation"] = cell.costs.allocation ? to_json(*cell.costs.allocation) : json(nullptr);
    j["costs"] = costs;
    j["evaluation"] = cell.exact_evaluation ? "exact" : "sampled";
    j["master_seed"] = cell.master_seed;
    j["seed_index"] = cell.seed_index;
    return j;
}

RunCell cell_from_json(const json &j) {
    RunCell cell;
    cell.task = task_from_json(j.at("task"));
    cell.optimizer_label = j.at("optimizer_label").get<std::string>();
    cell.optimizer = optimizer_from_json(j.at("optimizer"));
    const auto &costs = j.at("costs");
    cell.costs.time = latency_from_json(costs.at("time"));
    if (costs.contains("price") && !costs.at("price").is_null()) {
        cell.costs.price = latency_from_json(costs.at("price"));
    }
    if (costs.contains("allocation") && !costs.at("allocation").is_null()) {
        cell.costs.allocation = latency_from_json(costs.at("allocation"));
    }
    const auto evaluation = j.at("evaluation").get<std::string>();
    if (evaluation != "exact" && evaluation != "sampled") {
        throw std::invalid_argument("evaluation must be \"exact\" or \"sampled\"");
    }
    cell.exact_evaluation = evaluation == "exact";
    cell.master_seed = j.at("master_seed").get<std::uint64_t>();
    cell.seed_index = j.at("seed_index").get<std::uint64_t>();
    return cell;
}

LatencyModel resolve_latency(const std::string &name_or_path) {
    if (name_or_path == "superconducting") {
        return LatencyModel::superconducting();
    }
    if (name_or_path == "braket-rigetti") {
        return LatencyModel::braket_rigetti();
    }
    if (name_or_path == "zero") {
        return LatencyModel{};
    }
    return load_latency(name_or_path);
}

CellResult run_cell(const RunCell &cell) {
    Task task = build_task(cell.task);
    OptimizerConfig config = cell.optimizer;
    config.estimator = task.estimator;
    if (cell.exact_evaluation) {
        config.estimator.mode = EvaluationMode::Exact;
    }
    const auto theta0 =
        initial_parameters(task.circuit.num_params(), derive_seed(cell.master_seed, "theta0", cell.seed_index));
    Rng rng(derive_seed(cell.master_seed, cell.optimizer_label, cell.seed_index));
    auto trace = optimize(task.circuit, task.observable, theta0, config, cell.costs, rng);
    return CellResult{std::move(task), std::move(trace)};
}

void run_cell_to_file(const RunCell &cell, const std::filesystem::path &path) {
    const auto result = run_cell(cell);
    auto config = to_json(cell);
    config["reference"] = result.task.reference;
    config["scale"] = result.task.scale;
    trace_emit(result.trace, config, path);
}

json to_json(const Manifest &manifest) {
    json j;
    j["version"] = 1;
    j["reference"] = manifest.reference;
    j["scale"] = manifest.scale;
    json cells = json::array();
    for (const auto &e : manifest.entries) {
        cells.push_back(json{{"trace", e.trace}, {"config", to_json(e.cell)}});
    }
    j["cells"] = cells;
    return j;
}

Manifest manifest_from_json(const json &j) {
    if (!j.is_object() || j.value("version", 0) != 1) {
        throw std::invalid_argument("unsupported manifest");
    }
    Manifest m;
    m.reference = j.at("reference").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : j.at("reference").get<double>();
    m.scale = j.at("scale").get<double>();
    for (const auto &c : j.at("cells")) {
        m.entries.push_back({cell_from_json(c.at("config")), c.at("trace").get<std::string>()});
    }
    return m;
}

Manifest load_manifest(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open manifest " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    return manifest_from_json(j);
}

void execute_sweep(const Manifest &manifest, const std::filesystem::path &out_dir, std::size_t workers) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    workers = std::max<std::size_t>(1, std::min(workers, manifest.entries.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (std::size_t i = next++; i < manifest.entries.size(); i = next++) {
            try {
                const auto &e = manifest.entries[i];
                run_cell_to_file(e.cell, out_dir / e.trace);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    write_json_file(out_dir / "manifest.json", to_json(manifest));
}

std::vector<OptimizerSummary> summarize(const Manifest &manifest, const std::filesystem::path &manifest_dir,
                                        Axis axis, double threshold, std::size_t grid_points) {
    if (manifest.entries.empty()) {
        throw std::invalid_argument("manifest has no cells");
    }
    const double reference = std::isnan(manifest.reference) ? 0.0 : manifest.reference;
    std::vector<std::string> order;
    std::vector<std::vector<Series>> groups;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = 0.0;
    for (const auto &e : manifest.entries) {
        const auto file = load_trace(manifest_dir / e.trace);
        auto s = trace_series(file.trace, axis, reference, manifest.scale);
        for (double x : s.x) {
            if (x > 0.0) {
                x_lo = std::min(x_lo, x);
            }
            x_hi = std::max(x_hi, x);
        }
        auto it = std::find(order.begin(), order.end(), e.cell.optimizer_label);
        if (it == order.end()) {
            order.push_back(e.cell.optimizer_label);
            groups.emplace_back();
            it = order.end() - 1;
        }
        groups[static_cast<std::size_t>(it - order.begin())].push_back(std::move(s));
    }
    std::vector<double> grid;
    if (std::isfinite(x_lo) && x_hi > x_lo) {
        grid = log_grid(x_lo, x_hi, std::max<std::size_t>(grid_points, 2));
    } else if (std::isfinite(x_lo)) {
        grid = {x_lo};
    }
    std::vector<OptimizerSummary> out;
    for (std::size_t g = 0; g < order.size(); ++g) {
        OptimizerSummary s;
        s.optimizer = order[g];
        s.runs = groups[g].size();
        s.time_to_threshold = time_to_threshold(groups[g], threshold);
        std::vector<double> finals;
        for (const auto &series : groups[g]) {
            if (!series.y.empty()) {
                finals.push_back(series.y.back());
            }
        }
        if (finals.empty()) {
            s.final_median = std::numeric_limits<double>::quiet_NaN();
        } else {
            auto mid = finals.begin() + static_cast<std::ptrdiff_t>((finals.size() - 1) / 2);
            std::nth_element(finals.begin(), mid, finals.end());
            s.final_median = *mid;
        }
        s.curve = median_curve(groups[g], grid);
        out.push_back(std::move(s));
    }
    return out;
}

int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Latency-aware shot-adaptive optimizers for variational circuits", "wecans"};
    app.require_subcommand(1);

    CellOptions run_opts;
    std::string run_optimizer = "we-adamcans";
    std::uint64_t run_seed = 0;
    std::string run_out = "trace.ndjson";
    auto *run = app.add_subcommand("run", "Run one (task, optimizer, seed) and write its trace");
    add_cell_options(run, run_opts);
    run->add_option("--optimizer", run_optimizer,
                    "sgd | adam | icans | gcans | wecans-i | wecans-g | adamcans | we-adamcans | adam-<s> | sgd-<s>")
        ->capture_default_str();
    run->add_option("--seed", run_seed, "Seed index")->capture_default_str();
    run->add_option("--out", run_out, "Trace path (.ndjson; a .csv mirror is written alongside)")
        ->capture_default_str();

    CellOptions sweep_opts;
    std::string sweep_optimizers = "icans,gcans,we-adamcans";
    std::string sweep_seeds = "0..9";
    std::string sweep_out = "sweep";
    std::string sweep_replay;
    std::size_t sweep_workers = std::max(1u, std::thread::hardware_concurrency());
    auto *sweep = app.add_subcommand("sweep", "Run every optimizer on every seed; writes traces and a manifest");
    add_cell_options(sweep, sweep_opts);
    sweep->add_option("--optimizers", sweep_optimizers, "Comma-separated optimizer labels")->capture_default_str();
    sweep->add_option("--seeds", sweep_seeds, "Seed indices: a..b or a,b,c")->capture_default_str();
    sweep->add_option("--out-dir", sweep_out, "Output directory")->capture_default_str();
    sweep->add_option("--workers", sweep_workers, "Concurrent runs");
    sweep->add_option("--replay", sweep_replay, "Re-execute the cells of an existing manifest");

    std::string sum_manifest;
    double sum_threshold = 1e-3;
    std::string sum_axis = "time";
    std::size_t sum_grid = 200;
    std::string sum_out;
    auto *summ = app.add_subcommand("summarize", "Median curves and time-to-threshold per optimizer");
    summ->add_option("--manifest", sum_manifest, "manifest.json written by sweep")->required();
    summ->add_option("--threshold", sum_threshold, "Metric threshold")->capture_default_str();
    summ->add_option("--axis", sum_axis, "time | cost | shots | iterations")->capture_default_str();
    summ->add_option("--grid-points", sum_grid, "Log-spaced grid size for median curves")->capture_default_str();
    summ->add_option("--out-dir", sum_out, "Where to write median_<optimizer>.csv and summary.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidConfig;
    }

    if (run->parsed()) {
        return guarded(err, [&] {
            const auto cell = make_cell(run_opts, run_optimizer, run_seed);
            run_cell_to_file(cell, run_out);
            out << "wrote " << run_out << '\n';
            return static_cast<int>(kOk);
        });
    }
    if (sweep->parsed()) {
        return guarded(err, [&] {
            Manifest manifest;
            if (!sweep_replay.empty()) {
                manifest = load_manifest(sweep_replay);
            } else {
                const auto seeds = parse_seed_list(sweep_seeds);
                for (const auto &label : split_list(sweep_optimizers)) {
                    for (auto seed : seeds) {
                        auto cell = make_cell(sweep_opts, label, seed);
                        manifest.entries.push_back({cell, trace_file_name(cell)});
                    }
                }
            }
            // validates the task before any run starts
            const auto task = build_task(manifest.entries.at(0).cell.task);
            manifest.reference = task.reference;
            manifest.scale = task.scale;
            execute_sweep(manifest, sweep_out, sweep_workers);
            out << "wrote " << manifest.entries.size() << " traces and " << (std::filesystem::path(sweep_out) / "manifest.json").string()
                << '\n';
            return static_cast<int>(kOk);
        });
    }
    return guarded(err, [&] {
        const auto manifest = load_manifest(sum_manifest);
        const auto dir = std::filesystem::path(sum_manifest).parent_path();
        const auto axis = parse_axis(sum_axis);
        const auto summary = summarize(manifest, dir, axis, sum_threshold, sum_grid);
        std::ostringstream table;
        table << "optimizer,runs,time_to_threshold,final_median\n";
        for (const auto &s : summary) {
            table << s.optimizer << ',' << s.runs << ','
                  << (s.time_to_threshold ? format_number(*s.time_to_threshold) : std::string("none")) << ','
                  << format_number(s.final_median) << '\n';
        }
        out << "axis=" << axis_name(axis) << " threshold=" << format_number(sum_threshold) << '\n' << table.str();
        if (!sum_out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(sum_out, ec);
            if (ec) {
                throw IoError("cannot create " + sum_out);
            }
            std::ofstream summary_file(std::filesystem::path(sum_out) / "summary.csv", std::ios::binary);
            summary_file << table.str();
            for (const auto &s : summary) {
                std::ofstream curve(std::filesystem::path(sum_out) / ("median_" + s.optimizer + ".csv"),
                                    std::ios::binary);
                curve << axis_name(axis) << ",median,count\n";
                for (std::size_t i = 0; i < s.curve.grid.size(); ++i) {
                    curve << format_number(s.curve.grid[i]) << ','
                          << (std::isnan(s.curve.median[i]) ? std::string("") : format_number(s.curve.median[i]))
                          << ',' << s.curve.count[i] << '\n';
                }
                if (!curve) {
                    throw IoError("failed writing median curve for " + s.optimizer);
                }
            }
            if (!summary_file) {
                throw IoError("failed writing summary.csv");
            }
        }
        return static_cast<int>(kOk);
    });
}

} // namespace wecans::cli
