// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace cli = certistoch::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args) {
    const auto r = run(args);
    INFO(r.err);
    REQUIRE(r.code == cli::kOk);
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("certistoch_test_" + name);
}

}  // namespace

TEST_CASE("bound tail") {
    const auto j = run_json({"bound", "tail", "--family", "power:0.5", "--norm", "1.3188", "--eps", "3,4,5"});
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["eps"] == 3.0);
    CHECK(j["rows"][2]["bound"].get<double>() < j["rows"][0]["bound"].get<double>());

    const auto e = run_json({"bound", "tail", "--family", "exppower:1,0.5", "--norm", "1", "--eps", "20,40"});
    CHECK(e["rows"][0]["closed_form"] == true);
    CHECK(e["family"]["kind"] == "exppower");
}

TEST_CASE("bound sup and kappa") {
    const auto j = run_json(
        {"bound", "sup", "--family", "power:0.5", "--inf-norm", "0.7", "--cbar", "1", "--majorant", "--eps", "10"});
    CHECK(j["value"].get<double>() > 0.7);
    CHECK(j["majorant"]["value"].get<double>() >= j["value"].get<double>() - 1e-12);

    const auto k = run_json({"kappa", "--family", "power:1", "--n", "1,16"});
    CHECK(k["rows"][0]["kappa"] == 1.0);
    CHECK(k["rows"][1]["kappa"].get<double>() == doctest::Approx(7.5366775414548804));
}

TEST_CASE("mc certify") {
    const auto p = run_json({"mc", "certify", "--eps", "1", "--delta", "0.36787944117144233", "--family", "power:0.5",
                             "--norm", "1"});
    CHECK(p["n"] == 261);
    const auto o = run_json({"mc", "certify", "--route", "orlicz", "--eps", "0.1", "--delta", "0.01", "--L", "1",
                             "--U", "power:2"});
    CHECK(o["n"] == 10000);
}

TEST_CASE("mc run with a fixed n is reproducible") {
    const std::vector<std::string> args{"mc", "run", "--n", "100000", "--seed", "5"};
    const auto a = run_json(args);
    const auto b = run_json({"mc", "run", "--n", "100000", "--seed", "5", "--workers", "3"});
    CHECK(a["estimate"] == b["estimate"]);
    CHECK(std::abs(a["estimate"].get<double>() - a["truth"].get<double>()) < 0.1);
}

TEST_CASE("model select-n") {
    const auto j = run_json({"model", "select-n", "--A", "pi/0.55", "--b", "0.5", "--beta", "0.9", "--eps", "0.1",
                             "--delta", "0.1"});
    CHECK(j["N"] == 3112);
    CHECK(j["params"]["A"].get<double>() == doctest::Approx(3.14159265358979 / 0.55));

    const auto cap = run({"model", "select-n", "--eps", "0.05", "--delta", "0.05", "--cap", "100"});
    CHECK(cap.code == cli::kCap);
    const auto bad = run({"model", "select-n", "--eps", "0.5", "--delta", "0.05", "--cap", "oops"});
    CHECK(bad.code == cli::kUsage);
    CHECK(cap.code != bad.code);
}

TEST_CASE("model simulate CSV") {
    const auto z = run({"model", "simulate", "--zero", "--paths", "3", "--grid", "0,1,4", "--format", "csv"});
    REQUIRE(z.code == 0);
    std::istringstream is(z.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,path_0,path_1,path_2");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(line.substr(line.find(',')) == ",0,0,0");
    }
    CHECK(rows == 4);

    const auto f1 = temp_file("sim1.csv"), f2 = temp_file("sim2.csv");
    REQUIRE(run({"model", "simulate", "--paths", "5", "--seed", "9", "--format", "csv", "-o", f1.string()}).code == 0);
    REQUIRE(run({"model", "simulate", "--paths", "5", "--seed", "9", "--format", "csv", "-o", f2.string(),
                 "--workers", "2"})
                .code == 0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    const auto s1 = slurp(f1);
    CHECK(!s1.empty());
    CHECK(std::hash<std::string>{}(s1) == std::hash<std::string>{}(slurp(f2)));
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);

    CHECK(run({"model", "simulate", "--grid", "0,2,3"}).code == cli::kUsage);
}

TEST_CASE("model constants") {
    const auto j = run_json({"model", "constants", "--N", "1"});
    CHECK(j["K"].get<double>() == doctest::Approx(10.530816573800907));
    CHECK(j["B_hat_N"].get<double>() == doctest::Approx(15.341634899909672));
}

TEST_CASE("dvw commands") {
    const auto p = run_json({"dvw", "prenorm", "--a", "2", "--b", "0.4", "--tail", "pareto:1"});
    CHECK(p["prenorm"].get<double>() == doctest::Approx(0.8824081226690668));
    CHECK(run({"dvw", "prenorm", "--a", "2", "--b", "0.6", "--tail", "pareto:1"}).code == cli::kValidity);

    const auto c = run_json({"dvw", "check", "--a", "2", "--b", "1", "--zeta", "1", "--accuracy", "1", "--nu", "0.5",
                             "--delta-n", "0.1", "--prenorms", "1,1", "--brownian", "0.25"});
    CHECK(c.contains("lhs"));
    CHECK(run({"dvw", "check", "--a", "2", "--b", "1", "--zeta", "1", "--accuracy", "1", "--nu", "0.5"}).code ==
          cli::kUsage);
}

TEST_CASE("subgauss commands") {
    const auto lp = run_json({"subgauss", "lp-check", "--cN", "0", "--delta", "1", "--alpha", "0.1"});
    CHECK(lp["pass"] == true);
    const auto ct = run({"subgauss", "ct-bound", "--zeta", "2", "--gamma-N", "1", "--T", "2", "--x", "1.5"});
    CHECK(ct.code == cli::kValidity);
    const auto b = run_json({"subgauss", "basis", "--basis", "legendre", "--w", "0.5"});
    CHECK(b["sup"].get<double>() == doctest::Approx(1.4823038073675111).epsilon(1e-8));
    CHECK(run({"subgauss", "basis", "--basis", "fourier"}).code == cli::kUsage);
}

TEST_CASE("config file overrides flags") {
    const auto path = temp_file("cfg.json");
    {
        std::ofstream f(path);
        f << R"({"norm": 2, "eps": [4, 8]})";
    }
    const auto j = run_json({"bound", "tail", "--family", "power:1", "--norm", "1", "--eps", "3", "--config",
                             path.string()});
    CHECK(j["norm"] == 2.0);
    CHECK(j["rows"].size() == 2);
    {
        std::ofstream f(path);
        f << R"({"nonsense": 1})";
    }
    CHECK(run({"bound", "tail", "--family", "power:1", "--norm", "1", "--eps", "3", "--config", path.string()}).code ==
          cli::kUsage);
    std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"bound"}).code == cli::kUsage);
    CHECK(run({"bound", "tail", "--family", "weird:1", "--norm", "1", "--eps", "3"}).code == cli::kUsage);
    CHECK(run({"bound", "tail", "--family", "power:1", "--norm", "-1", "--eps", "3"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("csv key-value output") {
    const auto r = run({"mc", "certify", "--eps", "0.1", "--delta", "0.01", "--route", "orlicz", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("key,value\nn,10000\n", 0) == 0);
}
