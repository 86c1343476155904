#include "doctest.h"
#include "eisgeo/cli.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace eisgeo;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("field and class group") {
    Result r = run({"field", "--D", "3", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["d_F"] == 12);
    CHECK(j["unit_norm"] == 1);
    CHECK(j["narrow_class_number"] == 2);

    r = run({"classgroup", "--D", "34", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["narrow_class_number"] == 4);

    r = run({"chars", "--D", "3", "--no-cache"});
    REQUIRE(r.code == kExitOk);
}

TEST_CASE("series json") {
    Result r = run({"series", "--D", "3", "--p", "13", "--N", "10", "--format", "json", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["d_F"] == 12);
    CHECK(j["p"] == 13);
    CHECK(j["r"] == 8);
    CHECK(j["kappa"] == 2);
    CHECK(j.contains("convention_sign"));
    CHECK(j["coeffs"].size() == 10);
    CHECK(j["constant"]["num"] == 0);

    r = run({"series", "--D", "6", "--p", "5", "--N", "6", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    j = json::parse(r.out);
    CHECK(j["constant"]["num"] == 4);
    CHECK(j["constant"]["den"] == 3);
    CHECK(j["coeffs"][5]["num"] == 96);
}

TEST_CASE("inert prime is a result, not an error") {
    Result r = run({"series", "--D", "3", "--p", "5", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["inert"] == true);
    for (const auto& a : j["coeffs"]) CHECK(a["num"] == 0);
}

TEST_CASE("csv output") {
    Result r = run({"series", "--D", "7", "--p", "3", "--N", "3", "--format", "csv", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "n,a_n,pairing\n0,2,\n1,24,-12\n2,72,-36\n3,24,-12\n");
}

TEST_CASE("exit codes") {
    Result r = run({"series", "--D", "5", "--p", "11", "--no-cache"});
    CHECK(r.code == kExitDomain);
    CHECK(r.err.find("no admissible character") != std::string::npos);
    CHECK(run({"field", "--D", "4", "--no-cache"}).code == kExitDomain);
    CHECK(run({"series", "--D", "3", "--p", "3", "--no-cache"}).code == kExitDomain);
    CHECK(run({"field", "--D", "x"}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"series", "--D", "3", "--p", "13", "--bogus"}).code == kExitUsage);
    CHECK(run({"series", "--D", "3", "--p", "13", "--algorithm", "fast"}).code == kExitUsage);
}

TEST_CASE("verify commands") {
    Result r = run({"verify", "--D", "6", "--p", "5", "--algorithm", "both", "--no-cache"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("cycle==enum for n=1..30") != std::string::npos);
    r = run({"verify-analytic"});
    CHECK(r.code == kExitOk);
}

TEST_CASE("intersect") {
    Result r = run({"intersect", "--form", "5,2,-1", "--p", "5", "--n", "6", "--algorithm", "both"});
    CHECK(r.code == kExitOk);
    CHECK(run({"intersect", "--form", "5,2", "--p", "5"}).code == kExitUsage);
}

TEST_CASE("determinism and cache transparency") {
    auto dir = std::filesystem::temp_directory_path() / ("eisgeo-cli-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::vector<std::string> base{"series", "--D", "34", "--p", "3", "--N", "8"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return run(a);
    };
    Result fresh = with({"--no-cache"});
    Result cold = with({"--cache-dir", dir.string()});
    Result warm = with({"--cache-dir", dir.string()});
    Result again = with({"--no-cache"});
    CHECK(fresh.code == cold.code);
    CHECK(fresh.out == cold.out);
    CHECK(fresh.out == warm.out);
    CHECK(fresh.out == again.out);
    Result rm1 = run({"rmpoints", "--D", "3", "--p", "13", "--cache-dir", dir.string()});
    Result rm2 = run({"rmpoints", "--D", "3", "--p", "13", "--cache-dir", dir.string()});
    Result rm3 = run({"rmpoints", "--D", "3", "--p", "13", "--no-cache"});
    CHECK(rm1.code == kExitOk);
    CHECK(rm1.out == rm2.out);
    CHECK(rm1.out == rm3.out);
    std::filesystem::remove_all(dir);
}
