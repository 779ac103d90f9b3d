#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpexp/config.hpp"
#include "cpexp/exit.hpp"

using namespace cpexp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "cpexp_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

JobOptions options_for(const fs::path& dir) {
    JobOptions options;
    options.output_dir = dir.string();
    return options;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t next = text.find("\r\n", pos);
        REQUIRE(next != std::string::npos);
        lines.push_back(text.substr(pos, next - pos));
        pos = next + 2;
    }
    return lines;
}

std::string drop_timestamp(const std::string& text) {
    std::string out;
    for (const auto& line : split_lines(text))
        if (line.rfind("# generated", 0) != 0) out += line + "\n";
    return out;
}

std::vector<std::string> comma_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(',', pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
}

json p0_process() {
    return json::parse(R"({"c": 2.0, "a": 0.5, "lambda": 1.0,
                           "jump": {"family": "exponential", "rate": 1.0}})");
}

}

TEST_CASE("unknown keys are rejected with their path") {
    const auto dir = fresh_dir("rejects");
    const auto options = options_for(dir);

    json config;
    config["process"] = p0_process();
    config["x_grid"] = {0.0, 1.0};
    config["bogus"] = 1;
    CHECK_THROWS_WITH_AS(run_job("resolvent", config, options),
                         "config.resolvent: unknown key 'bogus'", std::invalid_argument);

    json drifted = p0_process();
    drifted["drift"] = 0.1;
    CHECK_THROWS_WITH_AS(parse_process(drifted), "config.process: unknown key 'drift'",
                         std::invalid_argument);

    config.erase("bogus");
    config["process"]["jump"]["scale"] = 2.0;
    CHECK_THROWS_WITH_AS(run_job("resolvent", config, options),
                         "config.process.jump: unknown key 'scale'",
                         std::invalid_argument);

    config["process"] = p0_process();
    config["x_grid"] = json::parse(R"({"from": 0, "to": 1, "step": 0.5})");
    CHECK_THROWS_WITH_AS(run_job("resolvent", config, options),
                         "config.resolvent.x_grid: unknown key 'step'",
                         std::invalid_argument);

    CHECK_THROWS_WITH_AS(parse_jump(json::parse(R"({"family": "uniform", "rate": 1})")),
                         "config.process.jump.family: unknown family 'uniform'",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_resolvent_options(json::parse(R"({"path": "fast"})")),
                    std::invalid_argument);
}

TEST_CASE("the config job name must match the subcommand") {
    const auto dir = fresh_dir("mismatch");
    json config;
    config["job"] = "resolvent";
    config["process"] = p0_process();
    config["x_grid"] = {0.0, 1.0};
    CHECK_THROWS_WITH_AS(run_job("exit", config, options_for(dir)),
                         "config.job: does not match the subcommand 'exit'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(run_job("frobnicate", json::object(), options_for(dir)),
                         "unknown job 'frobnicate'", std::invalid_argument);
}

TEST_CASE("resolvent runs are deterministic and carry their metadata") {
    const auto dir = fresh_dir("resolvent");
    json config;
    config["job"] = "resolvent";
    config["process"] = p0_process();
    config["s"] = {0.5, 1.0};
    config["x_grid"] = json::parse(R"({"from": 0, "to": 2, "count": 5})");

    CHECK(run_job("resolvent", config, options_for(dir)) == 0);
    const std::string first = slurp(dir / "resolvent.csv");
    const auto lines = split_lines(first);
    REQUIRE(lines.size() == 6 + 1 + 10);
    CHECK(lines[0] == "# cpexp 0.1.0");
    CHECK(lines[2] == "# job resolvent");
    CHECK(lines[3].rfind("# process c=2 a=0.5 lambda=1", 0) == 0);
    CHECK(lines[4].rfind("# method bromwich", 0) == 0);
    CHECK(lines[5].rfind("# tolerances root_rel=", 0) == 0);
    CHECK(lines[6] == "s,x,density,cumulative");

    const auto second_dir = fresh_dir("resolvent_again");
    CHECK(run_job("resolvent", config, options_for(second_dir)) == 0);
    CHECK(drop_timestamp(slurp(second_dir / "resolvent.csv")) == drop_timestamp(first));
}

TEST_CASE("grids given as arrays and as ranges agree") {
    const auto dir = fresh_dir("grids");
    json config;
    config["process"] = p0_process();
    config["s"] = 1.0;
    config["x_grid"] = {0.0, 0.5, 1.0};
    config["output"] = {{"basename", "array.csv"}};
    CHECK(run_job("resolvent", config, options_for(dir)) == 0);

    config["x_grid"] = json::parse(R"({"from": 0, "to": 1, "count": 3})");
    config["output"] = {{"basename", "range.csv"}};
    CHECK(run_job("resolvent", config, options_for(dir)) == 0);

    CHECK(drop_timestamp(slurp(dir / "array.csv")) ==
          drop_timestamp(slurp(dir / "range.csv")));
}

TEST_CASE("exit tables close and carry one overshoot column per z") {
    const auto dir = fresh_dir("exit");
    json config;
    config["job"] = "exit";
    config["process"] = p0_process();
    config["band"] = 2.0;
    config["s"] = {1.0};
    config["start"] = {0.5, 1.0, 1.5};
    config["z"] = {0.0, 1.0};
    CHECK(run_job("exit", config, options_for(dir)) == 0);

    const auto lines = split_lines(slurp(dir / "exit.csv"));
    REQUIRE(lines.size() == 7 + 1 + 3);
    CHECK(lines[7] == "s,start,exit_down,exit_up,survival_lt,up_overshoot_z0,up_overshoot_z1");
    for (std::size_t i = 8; i < lines.size(); ++i) {
        const auto fields = comma_fields(lines[i]);
        REQUIRE(fields.size() == 7);
        const double s = std::stod(fields[0]);
        const double down = std::stod(fields[2]);
        const double up = std::stod(fields[3]);
        const double survival = std::stod(fields[4]);
        CHECK(down + up + s * survival == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::stod(fields[5]) == doctest::Approx(up).epsilon(1e-9));
        CHECK(std::stod(fields[6]) < up);
    }
}

TEST_CASE("entry tables cover all three start placements") {
    const auto dir = fresh_dir("entry");
    json config;
    config["job"] = "entry";
    config["process"] = p0_process();
    config["band"] = 2.0;
    config["s"] = 1.0;
    config["z"] = {0.0, 0.5};
    config["starts"] = json::parse(
        R"([{"side": "above", "offset": 1.0},
            {"side": "below", "offset": 1.0},
            {"side": "inside", "offset": 1.0}])");
    CHECK(run_job("entry", config, options_for(dir)) == 0);

    const auto lines = split_lines(slurp(dir / "entry.csv"));
    REQUIRE(lines.size() == 7 + 1 + 6);
    CHECK(lines[7] == "s,side,offset,z,entry_lt");
    CHECK(comma_fields(lines[8])[1] == "above");
    CHECK(comma_fields(lines[10])[1] == "below");
    CHECK(comma_fields(lines[12])[1] == "inside");
    CHECK(std::stod(comma_fields(lines[12])[4]) ==
          doctest::Approx(0.1051973).epsilon(1e-4));
    for (std::size_t i = 8; i < lines.size(); ++i) {
        const double value = std::stod(comma_fields(lines[i])[4]);
        CHECK(value > 0.0);
        CHECK(value < 1.0);
    }
}

TEST_CASE("survival tables decrease along the time grid") {
    const auto dir = fresh_dir("survival");
    json config;
    config["job"] = "survival";
    config["process"] = p0_process();
    config["band"] = 2.0;
    config["start"] = 1.0;
    config["t_grid"] = json::parse(R"({"from": 0.25, "to": 3.0, "count": 12})");
    CHECK(run_job("survival", config, options_for(dir)) == 0);

    const auto lines = split_lines(slurp(dir / "survival.csv"));
    REQUIRE(lines.size() == 9 + 1 + 12);
    CHECK(lines[9] == "t,survival");
    double prev = 1.0;
    for (std::size_t i = 10; i < lines.size(); ++i) {
        const double value = std::stod(comma_fields(lines[i])[1]);
        CHECK(value >= 0.0);
        CHECK(value <= prev + 1e-9);
        prev = value;
    }
}

TEST_CASE("simulation reports agree with the closed transform") {
    const auto dir = fresh_dir("simulate");
    json config;
    config["job"] = "simulate";
    config["kind"] = "exit";
    config["process"] = p0_process();
    config["band"] = 2.0;
    config["start"] = 1.0;
    config["s"] = 1.0;
    config["z"] = 0.5;
    config["paths"] = 4000;
    config["seed"] = 11;
    CHECK(run_job("simulate", config, options_for(dir)) == 0);

    const json report = json::parse(slurp(dir / "simulate.json"));
    CHECK(report["job"] == "simulate");
    CHECK(report["kind"] == "exit");
    CHECK(report["paths"] == 4000);
    REQUIRE(report["results"].contains("down_lt"));
    const double mean = report["results"]["down_lt"]["mean"].get<double>();
    const double err = report["results"]["down_lt"]["std_error"].get<double>();
    CHECK(err > 0.0);
    const auto ctx = ResolventContext::build(parse_process(config["process"]), 1.0);
    CHECK(std::abs(mean - exit_down(ctx, ExitQuery(2.0, 1.0))) < 6.0 * err);
}

TEST_CASE("the validation job writes its table and reports success") {
    const auto dir = fresh_dir("validate");
    json config;
    config["job"] = "validate";
    config["paths"] = 20000;
    config["threads"] = 2;
    CHECK(run_job("validate", config, options_for(dir)) == 0);

    const auto lines = split_lines(slurp(dir / "validate.csv"));
    REQUIRE(lines.size() > 4);
    CHECK(lines[3] == "name,pass,statistic,bound,seconds");
    std::size_t i = 4;
    int checks = 0;
    for (; i < lines.size() && !lines[i].empty(); ++i, ++checks) {
        const auto fields = comma_fields(lines[i]);
        REQUIRE(fields.size() == 5);
        CHECK(fields[1] == "1");
    }
    CHECK(checks == 11);
    CHECK(i < lines.size());
}
