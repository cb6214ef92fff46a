#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "cheigen/cli.hpp"
#include "cheigen/json_io.hpp"

using namespace cheigen;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = run_command(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kDistinct = R"({"matrix": [["4","1"],["2","5"]]})";

} // namespace

TEST_CASE("analyze prints a text report by default") {
    CliResult r = run({"analyze", "--input", "-"}, kDistinct);
    CHECK(r.code == 0);
    CHECK(r.out.find("class: Distinct2") != std::string::npos);
    CHECK(r.out.find("lambda = 3") != std::string::npos);
    CHECK(r.out.find("(1, -1)") != std::string::npos);
    CHECK(r.out.find("column 0 of B1") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("analyze emits the json result document") {
    CliResult r = run({"analyze", "--input", "-", "--format", "json"}, kDistinct);
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["class"] == "Distinct2");
    CHECK(j["spectrum"][0]["eigenvalue"] == "3");
    CHECK(j["spectrum"][1]["eigenvalue"] == "6");
    CHECK(j["verification"]["all_passed"] == true);
}

TEST_CASE("analyze reads golden input files") {
    CliResult r = run({"analyze", "--input", std::string(CHEIGEN_GOLDEN_DIR) + "/ex1.json",
                       "--format", "json"});
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["input"]["name"] == "golden-1");
    CHECK(j["eigenspaces"][1]["basis"][0] == nlohmann::json::array({"1", "2"}));
}

TEST_CASE("charpoly prints the polynomial") {
    CliResult r = run({"charpoly", "--input", "-"}, kDistinct);
    CHECK(r.code == 0);
    CHECK(r.out == "lambda^2 - 9*lambda + 18\n");

    CliResult j = run({"charpoly", "--input", "-", "--format", "json"}, kDistinct);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["coefficients"] == nlohmann::json::array({"18", "-9", "1"}));
    CHECK(doc["degree"] == 2);
}

TEST_CASE("verify reports success against the oracle") {
    CliResult r = run({"verify", "--input", "-"}, kDistinct);
    CHECK(r.code == 0);
    CHECK(r.out == "all checks passed\n");

    CliResult j = run({"verify", "--input", "-", "--format", "json"}, kDistinct);
    CHECK(j.code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["all_passed"] == true);
    bool saw_oracle = false;
    for (const auto& c : doc["checks"])
        if (c["name"].get<std::string>().rfind("oracle span", 0) == 0) saw_oracle = true;
    CHECK(saw_oracle);
}

TEST_CASE("domain errors exit with code 1") {
    CliResult complex_case = run({"analyze", "--input", "-"}, R"({"matrix": [["0","1"],["-1","0"]]})");
    CHECK(complex_case.code == 1);
    CHECK(complex_case.err.find("complex") != std::string::npos);

    CliResult irrational = run({"analyze", "--input", "-"}, R"({"matrix": [["0","1"],["2","0"]]})");
    CHECK(irrational.code == 1);
    CHECK(irrational.err.find("use float mode") != std::string::npos);
}

TEST_CASE("usage and parse errors exit with code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"analyze", "--input", "-"}, "not json").code == 2);
    CHECK(run({"analyze", "--input", "/nonexistent/path.json"}).code == 2);
    CHECK(run({"analyze", "--format", "yaml", "--input", "-"}, kDistinct).code == 2);
    CHECK(run({"bench", "--classes", "nonsense", "--count", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("mode flag converts the input") {
    CliResult r = run({"analyze", "--input", "-", "--format", "json", "--mode", "float"},
                      kDistinct);
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["mode"] == "float");
    CHECK(j["spectrum"][0]["eigenvalue"].is_number());

    CliResult e = run({"analyze", "--input", "-", "--format", "json", "--mode", "exact"},
                      R"({"matrix": [[4.0, 1.0],[2.0, 5.0]]})");
    CHECK(e.code == 0);
    nlohmann::json je = nlohmann::json::parse(e.out);
    CHECK(je["mode"] == "exact");
    CHECK(je["spectrum"][0]["eigenvalue"] == "3");
}

TEST_CASE("tolerance comes from the flag or the environment") {
    CliResult r = run({"analyze", "--input", "-", "--format", "json", "--tolerance", "1e-7"},
                      R"({"matrix": [[4.0, 1.0],[2.0, 5.0]]})");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["tolerance"]["zero_threshold"] == 1e-7);

    ::setenv("CH_EIGEN_TOLERANCE", "1e-5", 1);
    CliResult env = run({"analyze", "--input", "-", "--format", "json"},
                        R"({"matrix": [[4.0, 1.0],[2.0, 5.0]]})");
    ::unsetenv("CH_EIGEN_TOLERANCE");
    CHECK(env.code == 0);
    CHECK(nlohmann::json::parse(env.out)["tolerance"]["zero_threshold"] == 1e-5);
}

TEST_CASE("gen is reproducible and produces the requested structure") {
    std::vector<std::string> args = {"gen", "--spec",
                                     R"({"dim": 2, "blocks": [{"eigenvalue": "3", "size": 2}]})",
                                     "--seed", "11", "--count", "3"};
    CliResult a = run(args);
    CliResult b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::istringstream lines(a.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        MatrixDocument doc = parse_matrix(line);
        CHECK(doc.name.value() == "gen-11-" + std::to_string(n));
        CliResult check = run({"analyze", "--input", "-", "--format", "json"}, line);
        CHECK(check.code == 0);
        CHECK(nlohmann::json::parse(check.out)["class"] == "Double2(geo 1)");
        ++n;
    }
    CHECK(n == 3);

    CHECK(run({"gen", "--spec", R"({"dim": 3, "blocks": []})"}).code == 2);
}

TEST_CASE("bench gates on span equality before timing") {
    CliResult r = run({"bench", "--count", "5", "--classes", "distinct2,triple-geo2"});
    CHECK(r.code == 0);
    size_t gate = r.out.find("span-equality gate: PASS");
    size_t table = r.out.find("ratio");
    REQUIRE(gate != std::string::npos);
    REQUIRE(table != std::string::npos);
    CHECK(gate < table);

    CliResult j = run({"bench", "--count", "3", "--classes", "distinct2", "--format", "json"});
    CHECK(j.code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["gate_passed"] == true);
    CHECK(doc["classes"][0]["count"] == 3);
}
