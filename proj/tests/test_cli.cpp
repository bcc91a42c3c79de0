#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "ffstat/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ffstat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json report(std::vector<std::string> args) {
    const auto r = invoke(std::move(args));
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("factor-type command") {
    const auto j = report({"factor-type", "--p", "5", "--poly", "t^2 - A1", "--point", "4", "--quiet"});
    CHECK(j["command"] == "factor-type");
    CHECK(j["result"]["type"] == "[1,1]");
    const auto ns = report({"factor-type", "--p", "5", "--poly", "t^2 - A1", "--point", "0", "--quiet"});
    CHECK(ns["result"]["outcome"] == "non_squarefree");
}

TEST_CASE("dist command") {
    const auto j = report({"dist", "--p", "13", "--poly", "t^2 - A1", "--set", "full", "--quiet", "--no-run-info"});
    CHECK(j["result"]["counts"]["[1,1]"] == 6);
    CHECK(j["result"]["counts"]["[2]"] == 6);
    CHECK(j["result"]["non_squarefree"] == 1);
    CHECK_FALSE(j.contains("run"));
    const auto with_run = report({"dist", "--p", "13", "--poly", "t^2 - A1", "--quiet"});
    CHECK(with_run.contains("run"));
}

TEST_CASE("irreg command") {
    const auto j = report({"irreg", "--p", "101", "--set", "grid:int(0,10)", "--quiet"});
    CHECK(j["result"]["cardinality"] == 10);
    CHECK(j["result"]["irreg"].get<double>() > 1.0);
    CHECK(j["result"].contains("bound_9plogp"));
}

TEST_CASE("compare and demos") {
    const auto c = report({"compare", "--p", "31", "--poly", "t^3 + A1*t + A2", "--set", "full", "--quiet"});
    CHECK(c["result"]["tv_distance"].get<double>() < 0.2);
    CHECK(c["config"]["group"] == "symmetric(d=3)");
    const auto pv = report({"demo", "pv", "--p", "101", "--quiet"});
    CHECK(pv["command"] == "demo pv");
    const auto as = report({"demo", "artin-schreier", "--p", "3", "--k", "3", "--quiet"});
    CHECK(as["result"]["split_completely"] == 9);
    CHECK(as["result"]["fraction_split"] == 1.0);
}

TEST_CASE("CSV output") {
    const auto r = invoke({"dist", "--p", "13", "--poly", "t^2 - A1", "--format", "csv", "--quiet"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("type,count,frequency,prediction,deviation\n", 0) == 0);
    CHECK(r.out.find("non_squarefree") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"dist", "--p", "4", "--poly", "t^2 - A1", "--quiet"}).code == 2);
    CHECK(invoke({"dist", "--p", "5", "--poly", "t^2 + + A1", "--quiet"}).code == 2);
    const auto err = invoke({"dist", "--p", "5", "--poly", "t^2 + + A1"});
    CHECK(err.err.find("SyntaxError") != std::string::npos);
    CHECK(invoke({"dist", "--p", "101", "--poly", "t^2 - A1 - A2", "--budget", "100", "--quiet"}).code == 3);
    CHECK(invoke({"no-such-command"}).code == 2);
    CHECK(invoke({"demo", "morse", "--p", "7", "--f", "t^3", "--quiet"}).code == 2);
}

TEST_CASE("reports are byte-identical across thread counts") {
    const std::vector<std::vector<std::string>> commands = {
        {"compare", "--p", "101", "--poly", "t^3 + A1*t + A2", "--set", "grid:int(0,40),int(0,40)"},
        {"irreg", "--p", "3", "--k", "4", "--set", "tracezero"},
        {"charsum", "--p", "31", "--poly", "t^2 - A1", "--type", "[2]"},
    };
    for (auto base : commands) {
        base.push_back("--no-run-info");
        base.push_back("--quiet");
        std::string first;
        for (const char* threads : {"1", "4", "8"}) {
            auto args = base;
            args.push_back("--threads");
            args.push_back(threads);
            const auto r = invoke(args);
            REQUIRE(r.code == 0);
            if (first.empty())
                first = r.out;
            else
                CHECK(r.out == first);
        }
    }
}
