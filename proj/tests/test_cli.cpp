// End-to-end checks of the command-line binary; the path comes from the
// TODATOPO_CLI environment variable set by ctest.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("TODATOPO_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "TODATOPO_CLI not set");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("homology json golden output") {
    auto res = run_cli("homology --type A2 --json");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["schema"] == "1");
    CHECK(j["dims"] == nlohmann::json({4, 12, 6}));
    CHECK(j["betti"] == nlohmann::json({1, 3, 0}));
    CHECK(j["torsion"][1] == nlohmann::json({"2"}));
    CHECK(j["euler"] == -2);

    auto a1 = run_cli("homology --type A1 --json");
    auto j1 = nlohmann::json::parse(a1.out);
    CHECK(j1["betti"] == nlohmann::json({1, 1}));
}

TEST_CASE("repeated runs are byte-identical") {
    for (const char* args :
         {"homology --type A2 --json", "cells --type B2 --list --json",
          "toda simulate --type A2 --signs ++ --a 0.1,0.2 --b 1,1 --t-end 3 --samples 40 --json",
          "rootsys info --type G2 --json"}) {
        auto first = run_cli(args);
        auto second = run_cli(args);
        CHECK(first.exit_code == 0);
        CHECK(first.out == second.out);
        CHECK(!first.out.empty());
    }
}

TEST_CASE("rootsys info") {
    auto res = run_cli("rootsys info --type A2 --json");
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["rank"] == 2);
    CHECK(j["cartan"] == nlohmann::json({{2, -1}, {-1, 2}}));
    CHECK(j["weyl_order"] == 6);
    CHECK(j["positive_roots"] == 3);
    CHECK(j["coxeter_orders"][0][1] == 3);
}

TEST_CASE("cells listing") {
    auto res = run_cli("cells --type A1 --list --json");
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["counts"] == nlohmann::json({2, 2}));
    CHECK(j["cells"].size() == 4);
    CHECK(j["cells"][0]["dim"] == 0);
}

TEST_CASE("classify reproduces the gluing identification") {
    auto res = run_cli("classify --type A2 --chamber s1 --point -1,0.5 --json");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["diagram"] == "R+");
    CHECK(j["canonical"]["diagram"] == "R-");
    CHECK(j["canonical"]["chamber"] == "e");
}

TEST_CASE("toda simulate emits csv and events") {
    auto res = run_cli(
        "toda simulate --type A1 --signs - --a -2 --b -3 --t-end 10 --samples 10 --csv");
    CHECK(res.exit_code == 0);
    CHECK(res.out.substr(0, 7) == "t,a1,b1");

    auto js = run_cli(
        "toda simulate --type A2 --signs ++ --a 0,0 --b 1,1 --t-end 5 --samples 10 --json");
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["events"].empty());
    CHECK(j["reached_t_end"] == true);
    CHECK(j["samples"].size() == 11);
    CHECK(j["invariant_drift"].is_number());
}

TEST_CASE("exit codes: usage 2, domain error 1, success 0") {
    CHECK(run_cli("homology").exit_code == 2);
    CHECK(run_cli("nonsense --type A2").exit_code == 2);
    CHECK(run_cli("classify --type A2 --point 2,0").exit_code == 1);   // out of chart
    CHECK(run_cli("homology --type D2 --json").exit_code == 1);        // unsupported type
    CHECK(run_cli("homology --type A2 --character 5").exit_code == 1); // degree out of range
    CHECK(run_cli("homology --type A2").exit_code == 0);
}

TEST_CASE("boundary matrix export") {
    std::string prefix = "/tmp/todatopo_test_export";
    auto res = run_cli("homology --type A1 --json --export-matrices " + prefix);
    CHECK(res.exit_code == 0);
    FILE* f = fopen((prefix + ".d1.txt").c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 256> buf;
    std::string content;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), n);
    fclose(f);
    // two columns (uncolored, e) and (uncolored, s); rows (R,[e]) then (B,[e])
    CHECK(content == "0 0 -1\n0 1 -1\n1 0 1\n1 1 1\n");
    std::remove((prefix + ".d1.txt").c_str());
}
