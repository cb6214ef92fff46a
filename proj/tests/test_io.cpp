#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cheigen/extract.hpp"
#include "cheigen/json_io.hpp"

using namespace cheigen;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("matrix documents parse in both modes") {
    MatrixDocument exact = parse_matrix(R"({"matrix": [["4","1"],["2","5"]]})");
    CHECK(exact.matrix.mode() == Mode::Exact);
    CHECK(exact.matrix.str() == "[[4, 1], [2, 5]]");
    CHECK(!exact.name.has_value());

    MatrixDocument flt = parse_matrix(R"({"matrix": [[1.0, 0.0],[0.5, 1.0]], "name": "f"})");
    CHECK(flt.matrix.mode() == Mode::Float);
    CHECK(flt.matrix.at(1, 0).flt() == 0.5);
    CHECK(flt.name.value() == "f");

    // Integer JSON numbers are float mode; fraction strings reduce.
    CHECK(parse_matrix(R"({"matrix": [[1, 2],[3, 4]]})").matrix.mode() == Mode::Float);
    MatrixDocument frac = parse_matrix(R"({"matrix": [["-10/4","0"],["0","1"]]})");
    CHECK(frac.matrix.at(0, 0).str() == "-5/2");
}

TEST_CASE("matrix document validation errors carry context") {
    CHECK_THROWS_AS(parse_matrix("not json"), ParseError);
    CHECK_THROWS_AS(parse_matrix("[1,2]"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [["1","2"],["3"]]})"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [["1",2],["3","4"]]})"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [["1","x"],["3","4"]]})"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [["1","1/0"],["3","4"]]})"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [["1"]]})"), ValidationError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [[true, 1],[2, 3]]})"), ValidationError);

    try {
        parse_matrix(R"({"matrix": [["1","x"],["3","4"]]})");
        CHECK(false);
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("row 0") != std::string::npos);
        CHECK(msg.find("column 1") != std::string::npos);
    }
}

TEST_CASE("serialization round-trips canonical documents byte for byte") {
    MatrixDocument doc = parse_matrix(R"({"matrix": [["4","1"],["2","5"]], "name": "golden-1"})");
    std::string canonical = serialize_matrix(doc);
    CHECK(serialize_matrix(parse_matrix(canonical)) == canonical);
    CHECK(canonical.back() == '\n');

    std::string golden = read_file(std::string(CHEIGEN_GOLDEN_DIR) + "/ex1.json");
    CHECK(serialize_matrix(parse_matrix(golden)) == golden);
}

TEST_CASE("scalars serialize by mode") {
    CHECK(scalar_to_json(Scalar::exact(-5, 2)).is_string());
    CHECK(scalar_to_json(Scalar::exact(-5, 2)).get<std::string>() == "-5/2");
    CHECK(scalar_to_json(Scalar::floating(0.5)).is_number());
    CHECK(scalar_to_json(Scalar::floating(0.5)).get<double>() == 0.5);
}

TEST_CASE("result documents use the fixed field names") {
    MatrixDocument doc = parse_matrix(R"({"matrix": [["4","1"],["2","5"]]})");
    TolerancePolicy tol;
    EigenStructure es = analyze(doc.matrix, tol);
    VerificationReport rep = verify_structure(doc.matrix, es, tol);
    nlohmann::json j = result_document(doc, es, rep, tol, 1e-6);
    for (const char* key :
         {"input", "mode", "tolerance", "class", "spectrum", "eigenspaces", "chains", "trace",
          "verification"})
        CHECK(j.contains(key));
    CHECK(j["mode"] == "exact");
    CHECK(j["class"] == "Distinct2");
    REQUIRE(j["spectrum"].size() == 2);
    CHECK(j["spectrum"][0]["eigenvalue"] == "3");
    CHECK(j["spectrum"][0]["algebraic"] == 1);
    CHECK(j["eigenspaces"][0]["basis"][0][0] == "1");
    CHECK(j["eigenspaces"][0]["basis"][0][1] == "-1");
    CHECK(j["verification"]["all_passed"] == true);
    CHECK(j["trace"].is_array());
    CHECK(j["trace"].size() == es.trace.lines().size());
}

TEST_CASE("text reports include the trace verbatim") {
    MatrixDocument doc = parse_matrix(R"({"matrix": [["4","1"],["2","5"]], "name": "t"})");
    TolerancePolicy tol;
    EigenStructure es = analyze(doc.matrix, tol);
    VerificationReport rep = verify_structure(doc.matrix, es, tol);
    std::string text = render_text_report(doc, es, rep);
    for (const auto& line : es.trace.lines())
        CHECK(text.find(line) != std::string::npos);
    CHECK(text.find("class: Distinct2") != std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
    CHECK(text.find("name: t") != std::string::npos);
}

TEST_CASE("jordan spec documents parse and validate") {
    oracle::JordanSpec spec = parse_jordan_spec(
        R"({"dim": 3, "blocks": [{"eigenvalue": "-2", "size": 2}, {"eigenvalue": 1, "size": 1}]})");
    CHECK(spec.dim == 3);
    REQUIRE(spec.blocks.size() == 2);
    CHECK(spec.blocks[0].eigenvalue.str() == "-2");
    CHECK(spec.blocks[0].size == 2);
    CHECK(spec.blocks[1].eigenvalue.str() == "1");

    CHECK(parse_jordan_spec(R"({"dim": 2, "blocks": [{"eigenvalue": "1/2", "size": 2}]})")
              .blocks[0]
              .eigenvalue.str() == "1/2");

    CHECK_THROWS_AS(parse_jordan_spec("nope"), ParseError);
    CHECK_THROWS_AS(parse_jordan_spec(R"({"dim": 3})"), ValidationError);
    CHECK_THROWS_AS(parse_jordan_spec(R"({"dim": 3, "blocks": []})"), ValidationError);
    CHECK_THROWS_AS(parse_jordan_spec(R"({"dim": 3, "blocks": [{"size": 3}]})"), ValidationError);
    CHECK_THROWS_AS(
        parse_jordan_spec(R"({"dim": 3, "blocks": [{"eigenvalue": 1.5, "size": 3}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_jordan_spec(R"({"dim": 3, "blocks": [{"eigenvalue": "1", "size": 0}]})"),
        ValidationError);
}
