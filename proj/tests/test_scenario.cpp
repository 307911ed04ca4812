#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "starforge/scenario.hpp"

using namespace starforge;

namespace {
std::string minimal_json(const std::string& extra = "", const std::string& strict = "true") {
    return R"({
      "model": {
        "n": 2,
        "order": "total",
        "strict": )" + strict + R"(,
        "delta_R": [[0, 0], [1, 0]]
      },
      "interaction": {"monomials": [{"indices": [0, 0, 0], "coeff": "1/6"}]},
      "bounds": {"hbar_max": 2, "lambda_max": 2}
      )" + extra + "}";
}
}  // namespace

TEST_CASE("scenario parsing") {
    Scenario sc = parse_scenario(minimal_json());
    CHECK(sc.theory.n() == 2);
    CHECK(sc.theory.strict);
    CHECK(sc.bounds.hbar_max == 2);
    CHECK_FALSE(sc.lambda_value.has_value());
    CHECK(sc.suites == all_suites());
    CHECK(sc.inter.diagonal_hessian);  // auto-detected from the cubic diagonal monomial

    Scenario with_lambda = parse_scenario(minimal_json(R"(, "lambda_value": "3/2")"));
    REQUIRE(with_lambda.lambda_value.has_value());
    CHECK(*with_lambda.lambda_value == Rational(3, 2));
}

TEST_CASE("scenario validation errors") {
    CHECK_THROWS_AS(parse_scenario("{"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("{}"), ScenarioError);
    // numeric coupling demands the nilpotent regime
    try {
        parse_scenario(minimal_json(R"(, "lambda_value": "1")", "false"));
        CHECK(false);
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("nilpotent regime required") != std::string::npos);
    }
    // unknown suite names are rejected
    CHECK_THROWS_AS(parse_scenario(minimal_json(R"(, "suites": ["no-such-suite"])")),
                    ScenarioError);
    // malformed matrices are rejected
    CHECK_THROWS_AS(parse_scenario(R"({
        "model": {"n": 2, "order": "total", "delta_R": [[0], [1, 0]]},
        "interaction": {"monomials": []},
        "bounds": {"hbar_max": 1, "lambda_max": 1}})"),
                    ScenarioError);
}

TEST_CASE("bundled scenario file parses and the fast suites pass") {
    std::ifstream in(SCENARIO_DIR "/m2-default.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str());
    CHECK(sc.theory.n() == 3);
    REQUIRE(sc.lambda_value.has_value());

    sc.suites = {"enumeration-census", "low-order-tables"};
    auto reports = run_suites(sc, 2);
    CHECK(all_pass(reports));
    for (const auto& rep : reports)
        for (const auto& chk : rep.checks) CHECK(chk.pass);

    // the JSON report carries one entry per check and a pass flag
    std::string json = report_json(sc, reports);
    CHECK(json.find("\"pass\": true") != std::string::npos);
    CHECK(json.find("enumeration-census") != std::string::npos);
}

TEST_CASE("reports are deterministic across worker counts") {
    std::ifstream in(SCENARIO_DIR "/m2-default.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str());
    sc.suites = {"exponential-products"};
    auto r1 = run_suites(sc, 1);
    auto r4 = run_suites(sc, 4);
    CHECK(report_json(sc, r1) == report_json(sc, r4));
}

TEST_CASE("term-table exports") {
    std::string csv = family_csv("G1(2)", 3, 0);
    CHECK(csv.rfind("graph_key,family,e,v,d,aut_order", 0) == 0);
    // header plus the four parallel-edge rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK_THROWS(family_csv("no-such-family", 1, 0));

    std::string lo = low_order_csv(2);
    // header, one order-1 row, four order-2 rows
    CHECK(std::count(lo.begin(), lo.end(), '\n') == 6);
    // graph keys contain commas and must be quoted
    CHECK(lo.find('"') != std::string::npos);

    std::string tex = low_order_latex(1);
    CHECK(tex.find("B_1 = ") != std::string::npos);
}
