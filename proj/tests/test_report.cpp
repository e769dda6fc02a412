#include <catch2/catch_amalgamated.hpp>

#include "clutterbench/report_io.hpp"

using namespace clutterbench;

TEST_CASE("report row reproduces the reference aggregate formatting") {
    MetricsReport rep;
    rep.policy_id = "cogact";
    rep.n_episodes = 1000;
    rep.n_success = 480;
    rep.sr = 0.480;
    rep.h_sr = 0.102;
    rep.cr = 0.872;
    rep.gfr = 0.395;
    rep.er = 0.367;
    CHECK(metrics_csv_row(rep) == "cogact,1000,480,0.480,0.102,0.872,0.395,0.367");

    const std::string csv = metrics_csv({rep});
    CHECK(csv.find(kMetricsCsvHeader) != std::string::npos);
    CHECK(csv.find("# er =") != std::string::npos);  // ER convention note in the header
    CHECK(csv.find("cogact,1000,480,0.480,0.102,0.872,0.395,0.367\n") != std::string::npos);
}

TEST_CASE("hand-count fixture renders as a CSV row") {
    MetricsReport rep;
    rep.policy_id = "p";
    rep.n_episodes = 4;
    rep.n_success = 2;
    rep.sr = 0.5;
    rep.h_sr = 0.25;
    rep.cr = 0.5;
    rep.gfr = 0.25;
    rep.er = 0.2;
    CHECK(metrics_csv_row(rep) == "p,4,2,0.500,0.250,0.500,0.250,0.200");
}

TEST_CASE("curve CSV keeps empty groups as null rows") {
    MetricsReport rep;
    rep.policy_id = "p";
    CurveRow filled;
    filled.key_lo = 0.0;
    filled.key_hi = 1.0;
    filled.n = 10;
    filled.sr = 0.7;
    filled.cr = 0.2;
    filled.gfr = 0.1;
    CurveRow empty;
    empty.key_lo = 1.0;
    empty.key_hi = 2.0;
    rep.per_bin = {filled, empty};
    const std::string csv = curve_csv({rep}, &MetricsReport::per_bin, "dvfc");
    CHECK(csv.find("p,0.000000,1.000000,10,0.700,0.200,0.100\n") != std::string::npos);
    CHECK(csv.find("p,1.000000,2.000000,0,,,\n") != std::string::npos);
}

TEST_CASE("stage CSV lists the four stages per policy") {
    MetricsReport rep;
    rep.policy_id = "p";
    rep.stage_histogram[0] = 5;
    rep.stage_histogram[1] = 3;
    rep.stage_histogram[2] = 2;
    rep.stage_histogram[3] = 1;
    CHECK(stages_csv({rep}) ==
          "policy,success,fail_reach,fail_grasp,fail_after_grasp\np,5,3,2,1\n");
}

TEST_CASE("agreement CSV labels regions by policy names") {
    std::set<std::string> a{"s1", "s2"}, b{"s2"};
    const AgreementReport rep = agreement({a, b}, 4);
    const std::string csv = agreement_csv(rep, {"alpha", "beta"});
    CHECK(csv.find("alpha,1,0.500\n") != std::string::npos);
    CHECK(csv.find("alpha&beta,1,0.500\n") != std::string::npos);
    CHECK(csv.find("union,,0.500\n") != std::string::npos);
}

TEST_CASE("metrics JSON carries stages and curve nulls") {
    MetricsReport rep;
    rep.policy_id = "p";
    rep.n_episodes = 2;
    rep.stage_histogram[0] = 2;
    CurveRow empty;
    rep.per_bin = {empty};
    const Json j = to_json(rep);
    CHECK(j["stages"]["success"] == 2);
    CHECK(j["per_bin"][0]["sr"].is_null());
}
