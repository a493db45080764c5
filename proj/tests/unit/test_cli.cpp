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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "wecans/cli.hpp"

namespace fs = std::filesystem;
using namespace wecans;

namespace {

int call(std::initializer_list<std::string> args, std::string *out_text = nullptr) {
    std::vector<std::string> storage{"wecans"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : storage) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text != nullptr) {
        *out_text = out.str();
    }
    return code;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kData = WECANS_DATA_DIR;

} // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes a trace with monotone accounting") {
    TempDir dir("wecans_cli_run");
    const auto out = (dir.path / "t.ndjson").string();
    REQUIRE(call({"run", "--task", "compile", "--n", "3", "--depth", "3", "--optimizer", "we-adamcans", "--seed",
                  "0", "--latency", kData + "/profiles/superconducting.json", "--budget-time", "200", "--out",
                  out}) == cli::kOk);
    const auto file = load_trace(out);
    REQUIRE_FALSE(file.trace.records.empty());
    for (std::size_t k = 1; k < file.trace.records.size(); ++k) {
        CHECK(file.trace.records[k].sim_time > file.trace.records[k - 1].sim_time);
    }
    CHECK(file.config["optimizer_label"] == "we-adamcans");
    CHECK(fs::exists(dir.path / "t.csv"));
}

TEST_CASE("identical runs produce byte-identical files") {
    TempDir dir("wecans_cli_det");
    const auto a = (dir.path / "a.ndjson").string();
    const auto b = (dir.path / "b.ndjson").string();
    for (const auto &p : {a, b}) {
        REQUIRE(call({"run", "--optimizer", "icans", "--seed", "4", "--budget-time", "100", "--out", p}) ==
                cli::kOk);
    }
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));
}

TEST_CASE("invalid configuration exits with 1") {
    TempDir dir("wecans_cli_bad");
    const auto out = (dir.path / "x.ndjson").string();
    CHECK(call({"run", "--optimizer", "nadam", "--budget-time", "10", "--out", out}) == cli::kInvalidConfig);
    CHECK(call({"run", "--budget-time", "-1", "--out", out}) == cli::kInvalidConfig);
    CHECK(call({"run", "--budget-time", "10", "--r", "1.5", "--out", out}) == cli::kInvalidConfig);
    CHECK(call({"run", "--budget-time", "10", "--task", "qaoa", "--out", out}) == cli::kInvalidConfig);
    CHECK(call({"run", "--no-such-flag"}) == cli::kInvalidConfig);
    CHECK(call({}) == cli::kInvalidConfig);
}

TEST_CASE("I/O failures exit with 2") {
    CHECK(call({"run", "--budget-time", "10", "--out", "/nonexistent/dir/t.ndjson"}) == cli::kIoFailure);
    CHECK(call({"run", "--budget-time", "10", "--latency", "/nonexistent/profile.json"}) == cli::kIoFailure);
    CHECK(call({"summarize", "--manifest", "/nonexistent/manifest.json"}) == cli::kIoFailure);
}

TEST_CASE("task and ansatz inconsistency exits with 3") {
    TempDir dir("wecans_cli_mismatch");
    CHECK(call({"run", "--task", "hamiltonian-file", "--hamiltonian", kData + "/hamiltonians/h2_jw.json", "--n",
                "3", "--budget-time", "10", "--out", (dir.path / "t.ndjson").string()}) == cli::kTaskMismatch);
}

TEST_CASE("sweep writes one trace per cell plus a manifest, and replay is byte-identical") {
    TempDir dir("wecans_cli_sweep");
    const auto first = dir.path / "first";
    const auto second = dir.path / "second";
    REQUIRE(call({"sweep", "--n", "2", "--depth", "1", "--seeds", "0..29", "--optimizers", "icans,gcans,we-adamcans",
                  "--budget-iterations", "3", "--workers", "2", "--out-dir", first.string()}) == cli::kOk);
    std::size_t traces = 0;
    for (const auto &e : fs::directory_iterator(first)) {
        traces += e.path().extension() == ".ndjson";
    }
    CHECK(traces == 90);
    const auto manifest = cli::load_manifest(first / "manifest.json");
    CHECK(manifest.entries.size() == 90);

    REQUIRE(call({"sweep", "--replay", (first / "manifest.json").string(), "--out-dir", second.string()}) ==
            cli::kOk);
    for (const auto &e : manifest.entries) {
        CHECK(slurp(first / e.trace) == slurp(second / e.trace));
    }
    CHECK(slurp(first / "manifest.json") == slurp(second / "manifest.json"));

    std::string table;
    const auto summary_dir = dir.path / "summary";
    REQUIRE(call({"summarize", "--manifest", (first / "manifest.json").string(), "--threshold", "0.5", "--axis",
                  "iterations", "--out-dir", summary_dir.string()},
                 &table) == cli::kOk);
    CHECK(table.find("icans,30,") != std::string::npos);
    CHECK(table.find("we-adamcans,30,") != std::string::npos);
    CHECK(fs::exists(summary_dir / "summary.csv"));
    CHECK(fs::exists(summary_dir / "median_gcans.csv"));
}

TEST_CASE("seed lists and optimizer labels") {
    OptimizerConfig cfg;
    cli::apply_optimizer_label("adam-1000", cfg);
    CHECK(cfg.kind == OptimizerKind::Adam);
    CHECK(cfg.fixed_shots == 1000);
    cli::apply_optimizer_label("sgd-50", cfg);
    CHECK(cfg.kind == OptimizerKind::Sgd);
    CHECK(cfg.fixed_shots == 50);
    CHECK_THROWS_AS(cli::apply_optimizer_label("adam-x", cfg), std::invalid_argument);
    CHECK(cli::resolve_latency("superconducting") == LatencyModel::superconducting());
    CHECK(cli::resolve_latency("zero") == LatencyModel{});
}

TEST_CASE("cells round-trip through JSON") {
    cli::RunCell cell;
    cell.task.kind = TaskKind::Tfim;
    cell.task.n = 4;
    cell.optimizer_label = "wecans-g";
    cli::apply_optimizer_label("wecans-g", cell.optimizer);
    cell.optimizer.budget.max_time = 123.5;
    cell.costs.time = LatencyModel::superconducting();
    cell.costs.price = LatencyModel::braket_rigetti();
    cell.master_seed = 42;
    cell.seed_index = 7;
    const auto back = cli::cell_from_json(cli::to_json(cell));
    CHECK(cli::to_json(back) == cli::to_json(cell));
    CHECK(back.task.n == 4);
    CHECK(*back.optimizer.budget.max_time == 123.5);
    CHECK(*back.costs.price == LatencyModel::braket_rigetti());
}

} // TEST_SUITE
