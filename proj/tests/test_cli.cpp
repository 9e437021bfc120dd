#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using Json = nlohmann::json;

namespace {

std::string bin_path() {
    const char* b = std::getenv("LCAMOD_BIN");
    if (!b) throw std::runtime_error("LCAMOD_BIN is not set; run through ctest");
    return b;
}

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    std::string errfile = "/tmp/lcamod_cli_err_" + std::to_string(getpid()) + "_" +
                          std::to_string(++counter);
    std::string cmd =
        env + (env.empty() ? "" : " ") + "'" + bin_path() + "' " + args + " 2>" + errfile;
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream ef(errfile);
    std::stringstream ss;
    ss << ef.rdbuf();
    r.err = ss.str();
    std::remove(errfile.c_str());
    return r;
}

}  // namespace

TEST_CASE("classify reports both verdicts") {
    auto r = run_cli("classify 'Zp(2)'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["command"] == "classify");
    CHECK(j["input"] == "Zp(2)");
    CHECK(j["version"] == "0.1.0");
    CHECK(j["result"]["tm"] == true);
    CHECK(j["result"]["stqh"] == true);
    CHECK(j["result"]["route"] == "Compact");
    CHECK(j["result"]["chosenU"] == "Zp(2)");
    CHECK(!j["result"].contains("clauses"));
}

TEST_CASE("classify single-verdict flags") {
    auto r = run_cli("classify --tm-only 'R'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["tm"] == false);
    CHECK(!j["result"].contains("stqh"));

    auto r2 = run_cli("classify --stqh-only 'Z'");
    auto j2 = Json::parse(r2.out);
    CHECK(j2["result"]["stqh"] == true);
    CHECK(!j2["result"].contains("tm"));

    auto r3 = run_cli("classify --tm-only --stqh-only 'Z'");
    CHECK(r3.code != 0);
}

TEST_CASE("classify explain carries the clause trace") {
    auto r = run_cli("classify --explain 'Qp(3)'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["result"].contains("clauses"));
    REQUIRE(!j["result"]["clauses"].empty());
    for (const auto& c : j["result"]["clauses"]) {
        CHECK(c.contains("theorem"));
        CHECK(c.contains("quote"));
        CHECK(c.contains("ok"));
    }
}

TEST_CASE("exit code two on parse errors") {
    auto r = run_cli("classify 'Zq(2)'");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    auto j = Json::parse(r.err);
    CHECK(j["error"]["exit"] == 2);
    CHECK(j["error"]["detail"].contains("position"));
}

TEST_CASE("exit code three on validation errors") {
    auto r = run_cli("classify 'prod[inf](Z)'");
    CHECK(r.code == 3);
    auto j = Json::parse(r.err);
    CHECK(j["error"]["type"] == "validation");

    CHECK(run_cli("decompose 'R'").code == 3);
    CHECK(run_cli("dual 'dsum[inf](Z)'").code == 3);
}

TEST_CASE("exit code four when the lattice bound trips") {
    auto r = run_cli("lattice 'Z(8)'", "LCA_LATTICE_BOUND=5");
    CHECK(r.code == 4);
    auto j = Json::parse(r.err);
    CHECK(j["error"]["type"] == "too-large");
    CHECK(j["error"]["detail"]["value"] == 8);
    CHECK(j["error"]["detail"]["bound"] == 5);
}

TEST_CASE("lattice reports counts and the modular check") {
    auto r = run_cli("lattice 'Z(2)xZ(2)' --modular-check --pentagon");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["subgroups"] == 5);
    CHECK(j["result"]["modular"] == true);
    CHECK(j["result"]["pentagon"].is_null());
}

TEST_CASE("dual prints the dual rendering") {
    auto r = run_cli("dual 'Z'");
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["result"] == "T");

    auto r2 = run_cli("dual 'dsum[inf](Zinf(3))'");
    CHECK(Json::parse(r2.out)["result"] == "prod[inf](Zp(3))");
}

TEST_CASE("invariants emits the record") {
    auto r = run_cli("invariants 'Zp(2)'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["isCompact"] == true);
    CHECK(j["result"]["isDiscrete"] == false);
    CHECK(j["result"]["isPeriodic"] == true);
}

TEST_CASE("decompose names its summands") {
    auto r = run_cli("decompose 'Zinf(2) + prod[inf](Z(2))'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["theorem"] == "split.primary.reduced-divisible");
    REQUIRE(j["result"]["summands"].size() == 2);
}

TEST_CASE("sqrt2 witness accepts decimal and ratio epsilons") {
    auto r = run_cli("witness sqrt2 --eps 1e-9");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    long long norm = j["result"]["norm"].get<long long>();
    CHECK((norm == 2 || norm == -2));
    CHECK(j["result"]["epsNum"] == 1);
    CHECK(j["result"]["epsDen"] == 1000000000);

    auto a = Json::parse(run_cli("witness sqrt2 --eps 0.001").out);
    auto b = Json::parse(run_cli("witness sqrt2 --eps 1/1000").out);
    CHECK(a["result"]["a"] == b["result"]["a"]);
    CHECK(a["result"]["b"] == b["result"]["b"]);

    CHECK(run_cli("witness sqrt2 --eps 2").code == 2);
    CHECK(run_cli("witness sqrt2 --eps 0").code == 2);
    CHECK(run_cli("witness sqrt2 --eps nonsense").code == 2);
}

TEST_CASE("escape witnesses confirm their growth") {
    auto r = run_cli("witness socle-sum --p 2 --levels 8");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["result"]["lowerBound"].size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(j["result"]["lowerBound"][i] == i + 1);
    CHECK(j["result"]["confirmed"] == true);

    auto r2 = run_cli("witness locprod-psquared --levels 10");
    REQUIRE(r2.code == 0);
    auto j2 = Json::parse(r2.out);
    CHECK(j2["result"]["lowerBound"].back() == 5);
    CHECK(j2["result"]["confirmed"] == true);
}

TEST_CASE("graph witness reports meets and the pentagon") {
    auto r = run_cli("witness graph-monothetic --levels 6");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["meetAtInfinity"] == "0");
    CHECK(j["result"]["confirmed"] == true);
    REQUIRE(j["result"]["meets"].size() == 6);
    CHECK(j["result"]["meets"][5]["indexInC"] == 729);
    CHECK(j["result"]["pentagon"]["distinctness"].size() == 10);

    CHECK(run_cli("witness bogus-family").code == 2);
    CHECK(run_cli("witness graph-monothetic --p 2 --q 2").code == 2);
}

TEST_CASE("corpus mode verifies every entry") {
    auto r = run_cli("--corpus");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["result"]["failed"] == 0);
    CHECK(j["result"]["total"].get<int>() >= 20);
    for (const auto& row : j["result"]["entries"]) CHECK(row["pass"] == true);
}

TEST_CASE("output is byte deterministic") {
    auto a = run_cli("classify --explain 'let P = primes distinct in dsum[inf](Z(P)) + prod[inf](Z(P))'");
    auto b = run_cli("classify --explain 'let P = primes distinct in dsum[inf](Z(P)) + prod[inf](Z(P))'");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors are nonzero") {
    CHECK(run_cli("classify").code != 0);
    CHECK(run_cli("--definitely-not-a-flag").code != 0);
    auto v = run_cli("--version");
    CHECK(v.code == 0);
    CHECK(v.out.find("0.1.0") != std::string::npos);
}
