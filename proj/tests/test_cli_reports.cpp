#include <doctest.h>

#include "rhaly/report.hpp"

using namespace rhaly;

TEST_CASE("parse the one-line comma form") {
    const auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=reciprocal, checks=[compactness]");
    CHECK(cfg.space_kind == "finite");
    CHECK(cfg.space_alpha == "linear:1");
    REQUIRE(cfg.theta.has_value());
    CHECK(*cfg.theta == "reciprocal");
    REQUIRE(cfg.checks.size() == 1);
    CHECK(cfg.checks[0].name == "compactness");
    // defaults
    CHECK(cfg.policy.N == 200);
    CHECK(cfg.policy.k_max == 6);
    CHECK(cfg.policy.m_max == 12);
    CHECK(cfg.policy.tol == doctest::Approx(1e-10));
    CHECK(cfg.K_test == 32);
}

TEST_CASE("parse line-oriented form with comments and options") {
    const auto cfg = parse_config(
        "# fixture\n"
        "space.kind = finite\n"
        "space.alpha = linear:1\n"
        "theta = geometric:1:0.5\n"
        "checks = [power_bound, fesas]\n"
        "check.fesas.box = 6\n"
        "policy.N = 64\n"
        "dynamics.K_test = 16\n");
    CHECK(cfg.policy.N == 64);
    CHECK(cfg.K_test == 16);
    REQUIRE(cfg.checks.size() == 2);
    CHECK(cfg.checks[1].options.at("box") == "6");
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_WITH_AS(parse_config("space.kind=finite, checks=[compactness]"),
                         doctest::Contains("theta"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("quad.r0=0.8, quad.r1=0.5"),
                         doctest::Contains("radius order"), ConfigError);
    CHECK_THROWS_AS(parse_config("bogus.key = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("checks = [no_such_check]"), ConfigError);
    CHECK_THROWS_AS(parse_config("theta = unknownfamily:1"), ConfigError);
    CHECK_THROWS_AS(parse_config("space.alpha = linear:x"), ConfigError);
    CHECK_THROWS_AS(parse_config("policy.N = 8"), std::invalid_argument);
}

TEST_CASE("the Cesaro fixture runs the documented check set") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=reciprocal, "
        "checks=[continuity, compactness, power_bound], policy.N=100");
    const Report rep = run(cfg);
    REQUIRE(rep.checks.size() == 3);
    CHECK(rep.checks[0].name == "continuity");
    CHECK(rep.checks[0].outcome == "Certified");
    CHECK(rep.checks[1].name == "compactness");
    CHECK(rep.checks[1].outcome == "Refuted");
    // the reciprocal theta fails sup_p ||theta||_p <= 1; the verdict comes
    // from the necessary-condition exhibit (no 2^k orbit growth exists)
    CHECK((rep.checks[2].outcome == "Refuted" || rep.checks[2].outcome == "Inconclusive"));
}

TEST_CASE("geometric fixture: power bound plus ergodic estimate") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=geometric:1:0.5, "
        "checks=[power_bound, ergodic], policy.N=64, "
        "dynamics.schedule=[1,2,4,8,16,32,64,128,256,512,1024]");
    const Report rep = run(cfg);
    REQUIRE(rep.checks.size() == 2);
    CHECK(rep.checks[0].outcome == "Certified");
    CHECK(rep.checks[1].status == "ok");
    const auto& inc = rep.checks[1].payload["increments"]["p=1"];
    REQUIRE(!inc.empty());
    CHECK(std::stod(inc.back().get<std::string>()) < 1e-6);
}

TEST_CASE("empty check list gives an empty report body") {
    auto cfg = parse_config("space.kind=finite, space.alpha=linear:1");
    const Report rep = run(cfg);
    CHECK(rep.checks.empty());
    const auto text = emit(rep, "text");
    CHECK(text.find("rhaly") != std::string::npos);
}

TEST_CASE("individual check errors become error rows and the run continues") {
    auto cfg = parse_config(
        "space.kind=infinite, space.alpha=linear:1, theta=geometric:1:2, "
        "checks=[membership, power_bound, weak_stability]");
    const Report rep = run(cfg);
    REQUIRE(rep.checks.size() == 3);
    CHECK(rep.checks[0].status == "ok");
    CHECK(rep.checks[0].outcome == "Refuted");      // theta outside the space
    CHECK(rep.checks[1].status == "error");         // power_bound throws on the precondition
    CHECK(rep.checks[2].status == "ok");
    CHECK(rep.checks[2].outcome == "Certified");
}

TEST_CASE("json emission round-trips and is timing-stable") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=geometric:1:0.5, "
        "checks=[membership, dual_membership, compactness], policy.N=64");
    const Report rep = run(cfg);
    const std::string a = emit(rep, "json", /*include_timing=*/false);
    const std::string b = emit(rep, "json", /*include_timing=*/false);
    CHECK(a == b);
    const Json parsed = Json::parse(a);
    CHECK(parsed["version"] == kToolVersion);
    CHECK(parsed["checks"].size() == 3);
    CHECK(parsed["checks"][0]["outcome"] == "Certified");
    CHECK(parsed["config"]["theta"] == "geometric:1:0.5");
    // a consumer can recheck the witness without rerunning the search
    CHECK(parsed["checks"][2]["payload"].contains("witness"));
}

TEST_CASE("csv rows carry counterexample indices") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=geometric:12:0.2, "
        "checks=[power_bound], policy.N=64");
    const Report rep = run(cfg);
    REQUIRE(rep.checks[0].outcome == "Refuted");
    const std::string csv = emit(rep, "csv", false);
    const auto header_end = csv.find('\n');
    const std::string header = csv.substr(0, header_end);
    CHECK(header.find("k,n,p") != std::string::npos);
    const std::string body = csv.substr(header_end + 1);
    CHECK(body.find("power_bound,ok,Refuted") != std::string::npos);
    // k, n, p, q columns populated
    CHECK(body.find(",1,1,") != std::string::npos);
}

TEST_CASE("text format prints verdicts verbatim") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=reciprocal, "
        "checks=[membership, dual_membership], policy.N=64");
    const std::string text = emit(run(cfg), "text");
    CHECK(text.find("Certified") != std::string::npos);
    CHECK(text.find("Refuted") != std::string::npos);
}

TEST_CASE("certified rows embed witnesses, refuted rows embed counterexamples") {
    auto cfg = parse_config(
        "space.kind=finite, space.alpha=linear:1, theta=geometric:1:0.5, "
        "checks=[membership, dual_membership, nuclearity, gp_nuclearity, continuity, "
        "compactness, sup_grade, power_bound, fesas], policy.N=64");
    const Report rep = run(cfg);
    for (const auto& c : rep.checks) {
        REQUIRE(c.status == "ok");
        if (c.outcome == "Certified") {
            INFO("check ", c.name);
            CHECK(c.payload.contains("witness"));
        }
        if (c.outcome == "Refuted") {
            INFO("check ", c.name);
            CHECK(c.payload.contains("counterexample"));
        }
    }
}

TEST_CASE("reports are deterministic across worker counts") {
    const std::string body =
        "space.kind=finite, space.alpha=linear:1, theta=geometric:1:0.5, "
        "checks=[membership, dual_membership, continuity, compactness, power_bound, "
        "m_topologizable, cesaro_bounded, fesas, orbit_decay, ergodic], policy.N=64, "
        "dynamics.K_test=16";
    auto cfg1 = parse_config(body);
    cfg1.workers = 1;
    auto cfg8 = parse_config(body);
    cfg8.workers = 8;
    const std::string a = emit(run(cfg1), "json", false);
    const std::string b = emit(run(cfg8), "json", false);
    CHECK(a == b);
    const std::string ca = emit(run(cfg1), "csv", false);
    const std::string cb = emit(run(cfg8), "csv", false);
    CHECK(ca == cb);
}
