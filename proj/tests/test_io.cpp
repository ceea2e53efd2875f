#include <stdexcept>

#include "doctest.h"
#include "swcert/json_io.hpp"
#include "swcert/rng.hpp"

using namespace swcert;

namespace {

const char* kExample2Config = R"({
  "matrices": [[[-0.92, 0.0], [0.0, 0.77]], [[1.24, 0.0], [0.0, 0.89]]],
  "delta": 2,
  "Delta": 3,
  "lambda": 0.001
})";

}  // namespace

TEST_CASE("parse_config reads a document and applies defaults") {
    const Config cfg = parse_config(kExample2Config);
    CHECK(cfg.matrices.size() == 2);
    CHECK(cfg.delta == 2);
    CHECK(cfg.Delta == 3);
    REQUIRE(cfg.lambda.has_value());
    CHECK(*cfg.lambda == 0.001);
    CHECK(cfg.seed == 0);
    CHECK(cfg.horizon == 200);
    CHECK(cfg.num_signals == 1000);
    CHECK(cfg.x0_box == 100.0);

    const SwitchedFamily fam = cfg.to_family();
    CHECK(fam.count() == 2);
    CHECK(fam.dim() == 2);
}

TEST_CASE("parse_config rejects malformed documents") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
    // unknown field
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5]]], "delta": 1, "Delta": 2,
                                    "mystery": 1})"),
                    ConfigError);
    // missing dwell bounds
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5]]]})"), ConfigError);
    // non-square matrix
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5, 0.2]]], "delta": 1, "Delta": 2})"),
                    ConfigError);
    // delta >= Delta violates the family invariant
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5]]], "delta": 2, "Delta": 2})"),
                    ConfigError);
    // bad option types
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5]]], "delta": 1, "Delta": 2,
                                    "horizon": -5})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"matrices": [[[0.5]]], "delta": 1, "Delta": 2,
                                    "lambda": "big"})"),
                    ConfigError);
}

TEST_CASE("certificate serialization carries the fixed field names") {
    const Config cfg = parse_config(kExample2Config);
    const Certificate cert = certify(cfg.to_family(), cfg.lambda);
    const ordered_json j = certificate_to_json(cert);
    CHECK(j["verdict"] == "certified_theorem1");
    CHECK(j["certified"] == true);
    CHECK(j["lambda"] == 0.001);
    CHECK(j.contains("c"));
    CHECK(j.contains("lhs"));
    CHECK(j["params"].contains("rho"));
    CHECK(j["params"]["zeta"].contains("delta_delta"));
    CHECK(j["params"]["eps"].contains("one_one"));
    CHECK(j["audit"].is_array());
    CHECK(j["N"] == 2);
    CHECK(j["delta"] == 2);
    CHECK(j["Delta"] == 3);
}

TEST_CASE("signal serialization is 1-based and round-trips") {
    const SwitchingSignal sig{{{0, 3}, {1, 2}, {0, 1}}};
    const ordered_json j = signal_to_json(sig);
    CHECK(j.dump() == "[[1,3],[2,2],[1,1]]");
    CHECK(signal_from_json(j) == sig);

    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        SwitchingSignal s;
        const int segs = rng.uniform_int(1, 12);
        for (int k = 0; k < segs; ++k)
            s.segments.push_back({rng.uniform_int(0, 5), rng.uniform_int(1, 9)});
        CHECK(signal_from_json(signal_to_json(s)) == s);
    }
    CHECK_THROWS_AS(signal_from_json(ordered_json::parse("[[1]]")), ConfigError);
    CHECK_THROWS_AS(signal_from_json(ordered_json::parse("{}")), ConfigError);
}

TEST_CASE("trajectory_csv format is stable") {
    const std::vector<double> norms{1.0, 1.0 / 3.0, 0.0};
    const std::string csv = trajectory_csv(norms);
    CHECK(csv == "t,norm_x,log_norm_x\n"
                 "0,1,0\n"
                 "1,0.33333333333333331,-1.0986122886681098\n"
                 "2,0,-inf\n");
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("format_double gives 17 significant digits deterministically") {
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(1e300) == "1.0000000000000001e+300");
}

TEST_CASE("monte-carlo summary serialization") {
    const Config cfg = parse_config(kExample2Config);
    const SwitchedFamily fam = cfg.to_family();
    const IndexPartition part = classify(fam);
    const DerivedParams dp = derive_params(fam, part);
    const MonteCarloSummary mc = monte_carlo(fam, part, dp, 3, 60, 10.0, 4, false);
    const ordered_json j = summary_to_json(mc);
    CHECK(j["num_runs"] == 3);
    CHECK(j["runs"].size() == 3);
    CHECK(j["runs"][0].contains("max_ratio"));
    CHECK(j["divergence_threshold"] == 1e6);
    // serialization is deterministic
    CHECK(j.dump() == summary_to_json(monte_carlo(fam, part, dp, 3, 60, 10.0, 4, true)).dump());
}
