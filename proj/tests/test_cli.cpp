// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpconc/app/commands.hpp"
#include "mpconc/app/config.hpp"
#include "mpconc/app/report.hpp"

using namespace mpconc;
using namespace mpconc::app;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mpconc");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "mpconc_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string write_config(const std::string &name, const std::string &text) {
    const fs::path path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::pair<std::string, std::string>> parse_csv(const std::string &text) {
    std::vector<std::pair<std::string, std::string>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "key,value");
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        rows.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    return rows;
}

} // namespace

TEST_CASE("config parsing") {
    const auto c = parse_config(nlohmann::json::parse(R"({
        "state": {"type": "explicit", "dims": [2, 2],
                  "amplitudes": [0.7071067811865476, 0, 0, [0, 0.7071067811865476]]},
        "visibility": 0.5, "measured": [1], "shots": 10, "seed": 3, "output_format": "csv"})"));
    CHECK(std::holds_alternative<ExplicitSpec>(c.state));
    CHECK(*c.visibility == 0.5);
    CHECK(c.measured.kind == MeasuredSpec::Kind::list);
    CHECK(*c.shots == 10);
    CHECK(c.seed == 3);
    CHECK(c.output_format == OutputFormat::csv);
    const auto psi = build_state(c.state);
    CHECK(psi.amplitudes()[3] == cplx(0.0, 0.7071067811865476));
    CHECK(resolve_measured(c.measured, 2).indices() == std::vector<std::size_t>{1});
    CHECK(resolve_measured(MeasuredSpec{MeasuredSpec::Kind::drop_last, {}}, 3).indices() ==
          std::vector<std::size_t>{0, 1});

    const auto g = parse_config(nlohmann::json::parse(R"({"state": {"type": "ghz", "N": 3}})"));
    CHECK(describe(g.state) == "ghz{N=3,d=2}");
    CHECK(g.output_format == OutputFormat::json);
    CHECK(g.measured.kind == MeasuredSpec::Kind::all);

    for (const char *bad : {
             R"({})",
             R"({"state": {"type": "ghz", "N": 3}, "extra": 1})",
             R"({"state": {"type": "ghz", "N": 3, "q": 1}})",
             R"({"state": {"type": "ghz", "N": "3"}})",
             R"({"state": {"type": "nope"}})",
             R"({"state": {"type": "ghz", "N": 3}, "visibility": 1.5})",
             R"({"state": {"type": "ghz", "N": 3}, "measured": "some"})",
             R"({"state": {"type": "ghz", "N": 3}, "output_format": "xml"})",
             R"({"state": {"type": "explicit", "dims": [2], "amplitudes": [1, 1]}})",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(build_state(parse_config(nlohmann::json::parse(bad)).state), InvalidArgument);
    }
}

TEST_CASE("compute subcommand") {
    const auto cfg = write_config("ghz3.json", R"({"state": {"type": "ghz", "N": 3}})");
    const auto r = cli({"compute", "--config", cfg, "--dense-oracle"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "compute");
    for (const char *route : {"two_copy_A", "reduced_rho", "single_observable", "two_copy_A_dense"}) {
        CHECK(std::abs(doc["routes"][route].get<double>() - std::sqrt(1.5)) < 1e-8);
    }
    CHECK(doc["max_pairwise_discrepancy"].get<double>() < 1e-8);
    CHECK_FALSE(doc.contains("wall_time_s"));
    CHECK(cli({"compute", "--config", cfg}).out == cli({"compute", "--config", cfg}).out);

    const auto prod = write_config("prod.json",
                                   R"({"state": {"type": "product", "locals": [[1, 0], [0, 1]]}})");
    const auto p = nlohmann::json::parse(cli({"compute", "--config", prod}).out);
    CHECK(p["routes"]["reduced_rho"].get<double>() < 1e-7);
    CHECK(p["p_plus_exact"].get<double>() == doctest::Approx(1.0));

    const auto rnd = write_config("rnd.json",
                                  R"({"state": {"type": "random", "dims": [2, 2, 2], "seed": 7}})");
    const auto q = nlohmann::json::parse(cli({"compute", "--config", rnd}).out);
    CHECK(q["max_pairwise_discrepancy"].get<double>() < 1e-8);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"compute"}).code == 2);
    CHECK(cli({"compute", "--config", "/nonexistent/mpconc.json"}).code == 2);
    CHECK(cli({"compute", "--config", write_config("bad.json", "{not json")}).code == 2);

    const auto ghz3 = write_config("ghz3.json", R"({"state": {"type": "ghz", "N": 3}})");
    CHECK(cli({"compute", "--config", ghz3, "--format", "xml"}).code == 2);
    const auto capped = cli({"compute", "--config", ghz3, "--max-dim-cap", "32"});
    CHECK(capped.code == 3);
    CHECK(capped.err.find("resource cap") != std::string::npos);
    const auto big = write_config("big.json", R"({"state": {"type": "ghz", "N": 11}})");
    CHECK(cli({"compute", "--config", big}).code == 3);

    const auto mixed = write_config("mixed.json",
                                    R"({"state": {"type": "ghz", "N": 2}, "visibility": 0.5})");
    const auto refused = cli({"compute", "--config", mixed});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("mixedness") != std::string::npos);

    const auto no_shots = cli({"sample", "--config", ghz3});
    CHECK(no_shots.code == 2);
}

TEST_CASE("verify subcommand") {
    const auto ok = cli({"verify", "--max-n", "3", "--trials", "50"});
    CHECK(ok.code == 0);
    const auto doc = nlohmann::json::parse(ok.out);
    CHECK(doc["passed"] == true);

    const auto bad = cli({"verify", "--max-n", "2", "--trials", "5", "--corrupt-normalization"});
    CHECK(bad.code == 1);
    const auto bdoc = nlohmann::json::parse(bad.out);
    CHECK(bdoc["passed"] == false);
    CHECK(bad.out.find("normalization") != std::string::npos);

    const auto empty = cli({"verify", "--trials", "0"});
    CHECK(empty.code == 0);
    CHECK(nlohmann::json::parse(empty.out)["warnings"].size() >= 1);
}

TEST_CASE("csv and json carry the same values") {
    const auto compute_cfg = write_config("w3.json", R"({"state": {"type": "w", "N": 3}})");
    const auto sample_cfg = write_config(
        "w3_shots.json",
        R"({"state": {"type": "w", "N": 3}, "measured": "all", "shots": 5000, "seed": 4})");
    for (const char *cmd : {"compute", "sample"}) {
        CAPTURE(cmd);
        const std::string cfg = std::string(cmd) == "compute" ? compute_cfg : sample_cfg;
        std::vector<std::string> base{cmd, "--config", cfg};
        auto json_args = base;
        json_args.insert(json_args.end(), {"--format", "json"});
        auto csv_args = base;
        csv_args.insert(csv_args.end(), {"--format", "csv"});
        const auto j = cli(json_args);
        const auto c = cli(csv_args);
        REQUIRE(j.code == 0);
        REQUIRE(c.code == 0);
        // Re-flatten the parsed JSON with the library's own key scheme and
        // compare text, so any rounding difference would show up.
        const Report parsed = Report::parse(j.out);
        const auto expected = flatten(parsed);
        const auto rows = parse_csv(c.out);
        REQUIRE(rows.size() == expected.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            CHECK(rows[k].first == expected[k].first);
            CHECK(rows[k].second == expected[k].second);
        }
    }
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(1.0) == "1");
    Report r;
    r["x"] = 0.1;
    r["inf"] = number_or_null(std::numeric_limits<double>::infinity());
    CHECK(render_json(r) == "{\n  \"x\": 0.10000000000000001,\n  \"inf\": null\n}\n");
    CHECK(render_csv(r) == "key,value\nx,0.10000000000000001\ninf,\n");
}

TEST_CASE("sample output is byte-identical across runs and thread counts") {
    const auto cfg = write_config(
        "bell.json", R"({"state": {"type": "ghz", "N": 2}, "shots": 300000, "seed": 12})");
    const auto dir = scratch_dir();
    const std::string one = (dir / "one.json").string();
    const std::string four = (dir / "four.json").string();
    const std::string again = (dir / "again.json").string();
    REQUIRE(cli({"sample", "--config", cfg, "--threads", "1", "--out", one}).code == 0);
    REQUIRE(cli({"sample", "--config", cfg, "--threads", "4", "--out", four}).code == 0);
    REQUIRE(cli({"sample", "--config", cfg, "--threads", "1", "--out", again}).code == 0);
    CHECK(read_file(one) == read_file(four));
    CHECK(read_file(one) == read_file(again));
    CHECK_FALSE(read_file(one).empty());

    const auto overridden = cli({"sample", "--config", cfg, "--seed", "13"});
    CHECK(overridden.out != read_file(one));
    CHECK(nlohmann::json::parse(overridden.out)["seed"] == 13);
}

TEST_CASE("sample report contents") {
    const auto cfg = write_config(
        "dep.json", R"({"state": {"type": "ghz", "N": 2}, "visibility": 0.5, "shots": 100000,
                        "seed": 1})");
    const auto r = cli({"sample", "--config", cfg});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const double exact = doc["exact"]["mixedness"].get<double>();
    CHECK(std::abs(exact - (1.0 - 0.4375)) < 1e-12);
    const double hat = doc["estimates"]["mixedness"].get<double>();
    const double q = exact / 2.0;
    CHECK(std::abs(hat - exact) < 3.0 * 2.0 * std::sqrt(q * (1.0 - q) / 100000.0));

    const auto pure = write_config(
        "pure.json", R"({"state": {"type": "product", "locals": [[1, 0], [1, 0]]}, "shots": 100})");
    const auto p = nlohmann::json::parse(cli({"sample", "--config", pure}).out);
    CHECK(p["estimates"]["concurrence_stderr"].is_null());
    CHECK(p["estimates"]["concurrence"].get<double>() == 0.0);
}
