#include "nlgw/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace nlgw;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("nl-dv") {
    Run r = run({"nl-dv", "--terms", "17"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["constraint_solution_agrees"] == true);
    auto s = j["series"];
    CHECK(s[0] == json({{"D", 0}, {"NL", "-10"}}));
    CHECK(s[1] == json({{"D", 11}, {"NL", "640"}}));
    CHECK(s[2] == json({{"D", 12}, {"NL", "990"}}));
    CHECK(s[4] == json({{"D", 15}, {"NL", "11440"}}));
    CHECK(s[5] == json({{"D", 16}, {"NL", "21450"}}));
    CHECK(j["gap"] == json({1, 3, 4, 5, 9}));

    Run one = run({"nl-dv", "--terms", "1"});
    CHECK(json::parse(one.out)["series"].size() == 1);

    Run csv = run({"--format", "csv", "nl-dv", "--terms", "12"});
    CHECK(csv.out == "D,NL\n0,-10\n11,640\n");
}

TEST_CASE("output is deterministic") {
    CHECK(run({"nl-dv"}).out == run({"nl-dv"}).out);
}

TEST_CASE("hls") {
    Run r = run({"hls", "--p", "11", "--emax", "30"});
    CHECK(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["matches_reference"] == true);
    Run e15 = run({"hls", "--e", "15"});
    CHECK(json::parse(e15.out)["rows"][0]["status"] == "not-HLS");
    Run e4 = run({"hls", "--e", "4"});
    CHECK(json::parse(e4.out)["rows"][0]["status"] == "HLS");
    Run e7 = run({"hls", "--e", "7"});
    CHECK(e7.code == kExitError);
    CHECK(e7.err.find("not a square") != std::string::npos);
}

TEST_CASE("chern") {
    Run r = run({"chern", "--family", "fano-pencil"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["euler"] == "-3960");
    CHECK(j["grr"] == "-6");
    CHECK(j["singular_fibers"] == "192");
    CHECK(run({"chern", "--family", "nope"}).code == kExitError);
}

TEST_CASE("check-gwnl") {
    Run r = run({"check-gwnl", "--family", "fano-pencil", "--dmax", "8", "--mode", "hybrid", "--extract"});
    CHECK(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["full_match"] == true);
    CHECK(j["rows"].size() == 8);
    CHECK(r.err.find("\"event\":\"progress\"") != std::string::npos);
    Run proven = run({"check-gwnl", "--family", "fano-pencil", "--dmax", "6"});
    CHECK(proven.code == kExitMismatch);
    Run bad = run({"check-gwnl", "--dmax", "0"});
    CHECK(bad.code == kExitError);
    CHECK(bad.err.find("usage error") != std::string::npos);
}

TEST_CASE("mirror") {
    Run r = run({"mirror", "--family", "fano-pencil", "--degree", "2"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["f0"] == json({"1", "-24", "1224"}));
    CHECK(j["f1"][0] == "0");
    CHECK(j["H3_invariants"]["2"] == "122472");
    CHECK_FALSE(j["I_degree"].empty());
}

TEST_CASE("bps") {
    Run r = run({"bps"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["pass"] == true);
    const std::string path = "cli_bps_table.csv";
    {
        std::ofstream f(path);
        f << "g,m,value\n0,1,0\n0,2,0\n1,1,7\n1,2,0\n";
    }
    Run t = run({"bps", "--input", path, "--gmax", "1", "--mmax", "2"});
    CHECK(t.code == kExitOk);
    // R_{1,2} = r_{1,2} + r_{1,1} / 2
    CHECK(t.out == "g,m,value\n0,1,0\n0,2,0\n1,1,7\n1,2,-7/2\n");
    std::remove(path.c_str());
}

TEST_CASE("hecke") {
    const std::string path = "cli_hecke.json";
    {
        std::ofstream f(path);
        f << R"({"coefficients": [[1, 1, "1"]]})";
    }
    Run r = run({"hecke", "--input", path, "--m", "1", "--ell", "2"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["coefficients"] == json::parse(R"([[1, 1, "1"]])"));
    std::remove(path.c_str());
}

TEST_CASE("config file with flags taking precedence") {
    const std::string path = "cli_config.toml";
    {
        std::ofstream f(path);
        f << "[nl-dv]\nterms=12\n";
    }
    Run r = run({"--config", path, "nl-dv"});
    CHECK(json::parse(r.out)["terms"] == 12);
    Run o = run({"--config", path, "nl-dv", "--terms", "5"});
    CHECK(json::parse(o.out)["terms"] == 5);
    std::remove(path.c_str());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitError);
    CHECK(run({"frobnicate"}).code == kExitError);
    CHECK(run({"--help"}).code == kExitOk);
}
