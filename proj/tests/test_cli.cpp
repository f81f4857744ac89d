#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

std::string cli() { return STABFREE_CLI_PATH; }

int run(const std::string& args) {
    std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

nlohmann::json run_json(const std::string& args) {
    std::string cmd = cli() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return nlohmann::json::parse(out);
}

}  // namespace

TEST_CASE("exit codes: usage and validation errors") {
    CHECK(run("check-square --p 4 --which A") == 1);
    CHECK(run("gen-module --p 2 --n 0") == 1);
    CHECK(run("no-such-command") == 1);
    CHECK(run("verify-certificate --in /nonexistent.json") == 1);
}

TEST_CASE("square checks succeed for the built-in squares") {
    CHECK(run("check-square --p 2 --which A --samples 40") == 0);
    CHECK(run("check-square --p 3 --which B --samples 40") == 0);
    CHECK(run("check-square --which sigma --G 12 --H 4 --samples 40") == 0);
}

TEST_CASE("a corrupted square descriptor exits with a verification failure") {
    nlohmann::json good =
        run_json("check-square --p 2 --which A --samples 1")["square"];
    good["homs"]["psi_minus"] = std::vector<std::string>{"1"};
    std::string path = "/tmp/stabfree_bad_square.json";
    std::ofstream(path) << good.dump();
    CHECK(run("check-square --in " + path) == 2);
}

TEST_CASE("gen-module emits the commutator and its layers") {
    nlohmann::json j = run_json("gen-module --p 2 --n 1");
    CHECK(j["delta"] == "1 + (1 + x)*t + (1 + x)*s*t*s^-1");
    CHECK(j["y_layers"][0] == "1");
    CHECK(j["y_layers"][1] == "t + s*t*s^-1");
}

TEST_CASE("certify emits verdicts with clean cross-checks") {
    nlohmann::json j = run_json("certify --p 2 --n 1 --n2 2 --len-bound 3");
    CHECK(j["verdict"] == "distinct");
    CHECK(j["agreement"] == true);
    CHECK(j["brute_force"]["hits"].empty());

    j = run_json("certify --p 3 --n 5 --n2 5 --len-bound 2");
    CHECK(j["verdict"] == "equivalent");
    CHECK(j["witness"]["gamma"] == "1");
    CHECK(j["witness"]["w"] == "1");
    CHECK(j["agreement"] == true);
}

TEST_CASE("trivialize then verify-certificate round-trips; tampering fails") {
    std::string path = "/tmp/stabfree_cert.json";
    CHECK(run("trivialize --p 3 --n 3 --out " + path) == 0);
    CHECK(run("verify-certificate --in " + path) == 0);

    std::ifstream is(path);
    nlohmann::json cert = nlohmann::json::parse(is);
    cert["certificate"]["factors"][2]["a"] = "x";
    std::string bad = "/tmp/stabfree_cert_bad.json";
    std::ofstream(bad) << cert.dump();
    CHECK(run("verify-certificate --in " + bad) == 2);
}

TEST_CASE("family reports pairwise distinctness") {
    nlohmann::json j = run_json("family --p 2 --N 3");
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(j["pairwise"][a][b] == (a == b ? "equal" : "distinct"));
}

TEST_CASE("unit-search locates exactly the local units of the negative control") {
    nlohmann::json j =
        run_json("unit-search --coeff fpcp:2 --m 0 --support-bound 1 --len-bound 0");
    CHECK(j["units"].size() == 2);
    CHECK(j["nontrivial_units"].empty());
}
