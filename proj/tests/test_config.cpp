#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ellax/config.hpp"
#include "ellax/report.hpp"
#include "ellax/suites.hpp"

using namespace ellax;

namespace {

json base_config() {
    return json::parse(R"({
        "p": 0.05, "q": 0.08, "m": 0, "n": 1, "seed": 3,
        "u": [0.40, 0.50, 0.45, -0.35, {"abs": 0.30, "arg": 0.7}]
    })");
}

} // namespace

TEST_CASE("complex number forms") {
    CHECK(parse_complex(json(0.25)) == cplx(0.25, 0.0));
    CHECK(parse_complex(json::parse(R"({"re": 1, "im": -2})")) == cplx(1.0, -2.0));
    CHECK(std::abs(parse_complex(json::parse(R"({"abs": 2, "arg": 1.5707963267948966})")) - cplx(0.0, 2.0)) < 1e-15);
    CHECK(parse_complex_string("-2.5e-1+0.4i") == cplx(-0.25, 0.4));
    CHECK(parse_complex_string("0.2-i") == cplx(0.2, -1.0));
    CHECK(parse_complex_string("3i") == cplx(0.0, 3.0));
    CHECK(parse_complex_string("1e-3") == cplx(1e-3, 0.0));
    CHECK_THROWS_AS(parse_complex_string("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex(json::array()), ConfigError);
    CHECK(parse_complex(complex_to_json(cplx(0.3, -0.7))) == cplx(0.3, -0.7));
}

TEST_CASE("argument points") {
    const ArgumentPoint h = parse_argument(json::parse(R"({"kind": "hatted", "value": "0.5+0.1i"})"));
    CHECK(h.is_hatted());
    CHECK(h.value == cplx(0.5, 0.1));
    CHECK(parse_argument(json(0.4)).is_plain());
    CHECK_THROWS_AS(parse_argument(json::parse(R"({"kind": "odd", "value": 1})")), ConfigError);
    const ArgumentPoint back = parse_argument(argument_to_json(h));
    CHECK(back.is_hatted());
    CHECK(back.value == h.value);
}

TEST_CASE("run configuration") {
    const RunConfig c = parse_run_config(base_config());
    const ParameterSet ps = c.parameters();
    CHECK(ps.count() == 6);
    CHECK(ps.balanced());
    json bad = base_config();
    bad["colour"] = 1;
    CHECK_THROWS_WITH_AS(parse_run_config(bad), doctest::Contains("colour"), ConfigError);
    json unbalanced = base_config();
    unbalanced["u"].push_back(0.5);
    CHECK_THROWS_WITH_AS(parse_run_config(unbalanced).parameters(), doctest::Contains("balancing violated"),
                         ConfigError);
    json short_u = base_config();
    short_u["u"].erase(0);
    CHECK_THROWS_AS(parse_run_config(short_u).parameters(), ConfigError);
    json bad_nome = base_config();
    bad_nome["p"] = 1.5;
    CHECK_THROWS_AS(parse_run_config(bad_nome).parameters(), ConfigError);
}

TEST_CASE("tolerance lookup") {
    json j = base_config();
    j["tolerance"] = {{"lax-A", 1e-6}, {"special", 1e-5}};
    const RunConfig c = parse_run_config(j);
    CHECK(c.tolerance_for("lax-A", "special", 1e-7) == 1e-5);
    CHECK(c.tolerance_for("lax-A", "Atilde", 1e-8) == 1e-6);
    CHECK(c.tolerance_for("beta", "beta", 1e-10) == 1e-10);
}

TEST_CASE("suite overrides and cases") {
    json j = base_config();
    j["suites"] = json::parse(R"({"selberg": {"q": 0.5, "cases": [{"label": "a", "n": 1}, {"n": 0}]}})");
    const ConfigDocument doc(j);
    CHECK(doc.base().q == cplx(0.08, 0.0));
    CHECK(doc.for_suite("selberg").q == cplx(0.5, 0.0));
    const std::vector<RunConfig> cs = doc.cases("selberg");
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].label == "a");
    CHECK(cs[1].label == "case1");
    CHECK(cs[1].n == 0);
    CHECK(doc.cases("beta").size() == 1);
}

TEST_CASE("autobalance completes u") {
    const json out = autobalance_config(base_config());
    REQUIRE(out["u"].size() == 6);
    json again = out;
    CHECK(parse_run_config(again).parameters().balancing_residual() < 1e-14);
    json bad = base_config();
    bad["u"].erase(0);
    CHECK_THROWS_AS(autobalance_config(bad), ConfigError);
}

TEST_CASE("report judgement") {
    CHECK(judge(1e-9, 1e-8, false));
    CHECK_FALSE(judge(1e-7, 1e-8, false));
    CHECK(judge(0.02, 1e-3, true));
    CHECK_FALSE(judge(1e-5, 1e-3, true));
    CHECK_FALSE(judge(std::nan(""), 1.0, false));
    CHECK_FALSE(judge(std::nan(""), 1e-3, true));
}

TEST_CASE("report JSON") {
    Report r;
    r.suite = "demo";
    r.seed = 9;
    r.config = base_config();
    r.checks.push_back({"zeta", 1e-9, 1e-8, false, true, 64, 0.5, ""});
    r.checks.push_back({"alpha", std::nan(""), 1e-8, false, false, 0, 0.1, "skipped: boundary"});
    const json j = r.to_json(false);
    CHECK(j["schema"] == "ellax-report/1");
    CHECK(j["tool"]["version"] == kToolVersion);
    CHECK(j["pass"] == false);
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0]["name"] == "alpha");
    CHECK(j["checks"][0]["residual"].is_null());
    CHECK(j["checks"][0]["note"] == "skipped: boundary");
    CHECK(j["checks"][1]["N_used"] == 64);
    CHECK(j["checks"][1]["seconds"].is_null());
    for (const char* key : {"name", "residual", "tolerance", "pass", "N_used", "seconds"})
        CHECK(j["checks"][1].contains(key));
    CHECK(r.to_json(true)["checks"][1]["seconds"] == 0.5);
    CHECK(j["config"] == base_config());
}

TEST_CASE("seeds and sampling") {
    CHECK(suite_seed(1, "a") == suite_seed(1, "a"));
    CHECK(suite_seed(1, "a") != suite_seed(1, "b"));
    CHECK(suite_seed(1, "a") != suite_seed(2, "a"));
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const double x = unit_uniform(rng);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    std::mt19937_64 a(5), b(5);
    const ParameterSet pa = sample_parameters(Nome(0.05), Nome(0.08), 0, 1, a);
    const ParameterSet pb = sample_parameters(Nome(0.05), Nome(0.08), 0, 1, b);
    CHECK(pa.u() == pb.u());
    CHECK(pa.balanced());
    CHECK(check_contour(pa).ok);
    for (const cplx& ur : pa.u())
        CHECK(std::abs(ur) <= 0.85);
    CHECK_FALSE(is_suite("nope"));
    CHECK(is_suite("lax-A"));
    CHECK(suite_names().size() == 9);
}
