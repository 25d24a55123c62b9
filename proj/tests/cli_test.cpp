#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CMCHECK_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), int(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(CMCHECK_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("test subcommand on a CM curve") {
    const auto r = run("test " + data("cm_curve.json") + " --trials 50 --xmax 3000 --seed 7");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verdict"] == "ProbablyCM");
    CHECK(doc["trials"].size() >= 50);
}

TEST_CASE("test subcommand certifies a non-integral j instantly") {
    const auto r = run("test " + data("non_integral_j.json") + " --trials 50");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verdict"] == "CertifiedNotCM");
    CHECK(doc["trials"].empty());
}

TEST_CASE("byte-identical output for identical input and seed") {
    const std::string args = "test " + data("cm_curve.json") + " --trials 40 --xmax 3000 --seed 99";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // a different seed changes the trial transcript
    const auto c = run("test " + data("cm_curve.json") + " --trials 40 --xmax 3000 --seed 100");
    CHECK(c.out != a.out);
}

TEST_CASE("disc subcommand recovers -4") {
    const auto r = run("disc " + data("cm_curve.json") + " --seed 3 --xmax 3000");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["discriminant"] == "-4");
    CHECK(doc["consistent"] == true);
}

TEST_CASE("survey subcommand emits the ratio row") {
    const auto r = run("survey " + data("cm_curve.json") + " --bound 2000");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const double ratio = doc["ratio"].get<double>();
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
    const auto csv = run("survey " + data("cm_curve.json") + " --bound 2000 --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find(',') != std::string::npos);
}

TEST_CASE("hilbert and classnum subcommands") {
    {
        const auto r = run("hilbert -D -7");
        CHECK(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc.is_array());
        CHECK(doc[0] == "3375");
        CHECK(doc[1] == "1");
    }
    {
        const auto r = run("classnum -D -23");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "3\n");
    }
    CHECK(run("hilbert -D 5").exit_code == 2);
}

TEST_CASE("galois subcommand certifies a generic quintic") {
    const auto r = run("galois " + data("quintic.json") + " --ell 7 --primes 120 --seed 11");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verdict"].get<std::string>().find("Certified") == 0);
    CHECK(doc["observations"].size() > 10);
}

TEST_CASE("gl2 subcommand prints the exact ratio") {
    const auto r = run("gl2 --ell 5 --ratio");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["trace_zero_ratio"] == "5/24");
}

TEST_CASE("error paths exit with code 2 and no stdout JSON") {
    CHECK(run("test /nonexistent.json").exit_code == 2);
    // malformed file
    const std::string bad = std::string(CMCHECK_TEST_DATA) + "/bad.json";
    {
        std::ofstream f(bad);
        f << "{malformed";
    }
    CHECK(run("test " + bad).exit_code == 2);
    std::remove(bad.c_str());
}
