#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tw/cli.hpp"
#include "tw/distributions.hpp"
#include "tw/errors.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tracywidom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = tw::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("tracywidom_test_" + name);
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(tw::cli::format_number(1.0) == "1");
    CHECK(tw::cli::format_number(0.1) == "0.1");
    CHECK(tw::cli::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(tw::cli::format_number(-2.5e-20) == "-2.5e-20");
    CHECK(tw::cli::format_number(123456789.123456789) == "123456789.123");
    CHECK(tw::cli::format_number(std::nan("")) == "nan");
}

TEST_CASE("grid construction") {
    tw::cli::RunConfig c;
    c.s_min = -1.0;
    c.s_max = 1.0;
    c.s_step = 0.5;
    CHECK(tw::cli::grid(c) == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    c.s_step = 0.7;
    CHECK(tw::cli::grid(c).size() == 3);
    c.s_max = c.s_min;
    CHECK(tw::cli::grid(c).empty());
    c.s_max = -2.0;
    CHECK_THROWS_AS(tw::cli::grid(c), tw::parameter_error);
    c.s_max = 1.0;
    c.s_step = 0.0;
    CHECK_THROWS_AS(tw::cli::grid(c), tw::parameter_error);
}

TEST_CASE("tabulate") {
    SUBCASE("right tail row") {
        const Result r = run({"tabulate", "--s-min", "10", "--s-max", "11", "--s-step", "5"});
        REQUIRE(r.code == 0);
        const auto ls = lines(r.out);
        REQUIRE(ls.size() == 2);
        CHECK(ls[0] == "s,F1,F2,F4,F1_painleve,F_SA");
        const auto v = fields(ls[1]);
        REQUIRE(v.size() == 6);
        CHECK(v[0] == 10.0);
        for (std::size_t k = 1; k < v.size(); ++k) CHECK(std::fabs(v[k] - 1.0) < 1e-8);
    }
    SUBCASE("interior rows") {
        const Result r = run({"tabulate", "--s-min", "-2", "--s-max", "2", "--s-step", "2"});
        REQUIRE(r.code == 0);
        const auto ls = lines(r.out);
        REQUIRE(ls.size() == 4);
        for (std::size_t i = 1; i < ls.size(); ++i) {
            const auto v = fields(ls[i]);
            CAPTURE(v[0]);
            CHECK(std::fabs(v[1] - tw::f1(v[0])) < 1e-11);
            CHECK(std::fabs(v[1] - v[4]) < 1e-6);
            CHECK(std::fabs(v[1] - v[5]) < 1e-9);
            CHECK(std::fabs(v[2] - tw::f2(v[0])) < 1e-11);
            CHECK(std::fabs(v[3] - tw::f4(v[0])) < 1e-11);
        }
    }
    SUBCASE("empty grid") {
        const Result r = run({"tabulate", "--s-min", "1", "--s-max", "1"});
        CHECK(r.code == 0);
        CHECK(r.out == "s,F1,F2,F4,F1_painleve,F_SA\n");
    }
    SUBCASE("json") {
        const Result r = run({"tabulate", "--s-min", "0", "--s-max", "1", "--s-step", "1", "--format", "json"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        REQUIRE(j.size() == 2);
        CHECK(j[0]["s"] == 0.0);
        CHECK(std::fabs(j[0]["F1"].get<double>() - tw::f1(0.0)) < 1e-11);
    }
    SUBCASE("out of range") {
        const Result r = run({"tabulate", "--s-min", "9", "--s-max", "12", "--s-step", "1"});
        CHECK(r.code == 2);
        CHECK(r.err.find("outside") != std::string::npos);
    }
}

TEST_CASE("verify") {
    SUBCASE("selected checks pass") {
        const Result r = run({"verify", "--s-min", "-4", "--s-max", "4", "--s-step", "4", "--checks", "eq3,lemma1,eq10"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.size() == 3 * (1 + 1 + 2));
        for (const auto& rep : j) CHECK(rep["passed"] == true);
    }
    SUBCASE("fault injection") {
        const Result r = run({"verify", "--s-min", "0", "--s-max", "2", "--s-step", "2", "--checks", "eq3",
                              "--perturb-kernel", "1e-3"});
        CHECK(r.code == 1);
        const auto j = nlohmann::json::parse(r.out);
        REQUIRE(j.size() == 2);
        CHECK(j[0]["name"] == "eq3");
        CHECK(j[0]["passed"] == false);
    }
    SUBCASE("empty selection") {
        const Result r = run({"verify", "--checks", ""});
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out).empty());
    }
    SUBCASE("csv") {
        const Result r = run({"verify", "--s-min", "0", "--s-max", "1", "--s-step", "1", "--checks", "eq3",
                              "--format", "csv"});
        CHECK(r.code == 0);
        const auto ls = lines(r.out);
        REQUIRE(ls.size() == 3);
        CHECK(ls[0] == "name,s,lhs,rhs,abs_diff,tolerance,passed");
        CHECK(ls[1].rfind("eq3,0,", 0) == 0);
    }
    SUBCASE("unknown check") { CHECK(run({"verify", "--checks", "eq99"}).code == 2); }
}

TEST_CASE("verify on the default grid passes") {
    const Result r = run({"verify"});
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& rep : j) {
        CAPTURE(rep.dump());
        CHECK(rep["passed"] == true);
    }
    CHECK(r.code == 0);
}

TEST_CASE("sampling") {
    SUBCASE("no samples") {
        const Result r = run({"sample-goe", "--count", "0"});
        CHECK(r.code == 1);
        const auto ls = lines(r.out);
        REQUIRE(!ls.empty());
        CHECK(ls.back() == "# ks=nan tolerance=0.08 passed=false");
        CHECK(std::find(ls.begin(), ls.end(), "run_index,seed,xi_hat") != ls.end());
    }
    SUBCASE("goe file is reproducible") {
        const auto a = temp_file("goe_a.csv"), b = temp_file("goe_b.csv");
        const std::vector<std::string> args = {"sample-goe", "--count", "100", "--dim", "50", "--seed", "7"};
        auto with = [&](const std::filesystem::path& p) {
            auto v = args;
            v.push_back("--out");
            v.push_back(p.string());
            return run(v);
        };
        const Result ra = with(a), rb = with(b);
        CHECK(ra.out.empty());
        const std::string ta = slurp(a), tb = slurp(b);
        CHECK(!ta.empty());
        CHECK(ta == tb);
        const auto ls = lines(ta);
        std::size_t rows = 0;
        for (const auto& l : ls)
            if (!l.empty() && l[0] != '#' && l != "run_index,seed,xi_hat") ++rows;
        CHECK(rows == 100);
        CHECK(ls.back().rfind("# ks=", 0) == 0);
        CHECK(ra.code == (ls.back().find("passed=true") != std::string::npos ? 0 : 1));
        std::filesystem::remove(a);
        std::filesystem::remove(b);
    }
    SUBCASE("tasep rows") {
        const Result r = run({"sample-tasep", "--count", "20", "--time", "8", "--seed", "3"});
        const auto ls = lines(r.out);
        CHECK(std::find(ls.begin(), ls.end(), "# invalid_runs=0") != ls.end());
        std::size_t rows = 0;
        for (const auto& l : ls)
            if (!l.empty() && l[0] != '#' && l != "run_index,seed,xi_hat") ++rows;
        CHECK(rows == 20);
        CHECK(r.code <= 1);
    }
    SUBCASE("bad parameters") {
        CHECK(run({"sample-goe", "--count", "5", "--dim", "1"}).code == 2);
        CHECK(run({"sample-tasep", "--count", "5", "--time", "1"}).code == 2);
        CHECK(run({"sample-tasep", "--count", "5", "--time", "2", "--phase", "3"}).code == 2);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"tabulate", "--nodes", "5"}).code == 2);
    CHECK(run({"tabulate", "--nodes", "600"}).code == 2);
    CHECK(run({"tabulate", "--s-min", "1", "--s-max", "0"}).code == 2);
    CHECK(run({"tabulate", "--s-step", "abc"}).code == 2);
    CHECK(run({"tabulate", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const Result io = run({"tabulate", "--s-min", "0", "--s-max", "1", "--out", "/nonexistent/dir/out.csv"});
    CHECK(io.code == 3);
    CHECK(!io.err.empty());
}

TEST_CASE("installed binary") {
    const auto path = temp_file("binary.csv");
    const std::string cmd = std::string("\"") + TRACYWIDOM_EXE + "\" tabulate --s-min 0 --s-max 1 --s-step 1 --out \"" +
                            path.string() + "\"";
    CHECK(std::system(cmd.c_str()) == 0);
    const auto ls = lines(slurp(path));
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "s,F1,F2,F4,F1_painleve,F_SA");
    std::filesystem::remove(path);
}
