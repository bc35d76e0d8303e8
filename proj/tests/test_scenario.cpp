#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "css/scenario.hpp"

#include <cmath>
#include <string>

using namespace css;

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::hedge_hc, Algorithm::hedge_sc, Algorithm::perc_sc,
                        Algorithm::hsc_bh, Algorithm::psc_bh, Algorithm::hsc_sw,
                        Algorithm::psc_sw, Algorithm::dhedge_hc, Algorithm::dhedge_sc,
                        Algorithm::dperc_sc, Algorithm::or_rule, Algorithm::and_rule,
                        Algorithm::majority_rule}) {
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    }
    CHECK_THROWS_AS(parse_algorithm("nope"), ConfigError);
    CHECK_THROWS_AS(parse_preset("nope"), ConfigError);
}

TEST_CASE("algorithm predicates partition the families") {
    CHECK(algo_is_hedge(Algorithm::hsc_sw));
    CHECK(algo_is_perceptron(Algorithm::psc_bh));
    CHECK(algo_is_baseline(Algorithm::majority_rule));
    CHECK_FALSE(algo_is_soft(Algorithm::hedge_hc));
    CHECK(algo_is_soft(Algorithm::dhedge_sc));
    CHECK(algo_uses_bh(Algorithm::psc_sw));
    CHECK_FALSE(algo_uses_bh(Algorithm::hedge_sc));
    CHECK(algo_uses_switch(Algorithm::hsc_sw));
    CHECK_FALSE(algo_uses_switch(Algorithm::hsc_bh));
}

TEST_CASE("presets pin the deployment geometry") {
    auto g = make_preset(Preset::gsc, Algorithm::hedge_hc);
    CHECK(g.area_side == 1000.0);
    CHECK(g.sus == 10);
    auto m = make_preset(Preset::msc, Algorithm::hedge_hc);
    CHECK(m.area_side == 8000.0);
    CHECK(m.sus == 50);
    auto b = make_preset(Preset::bsc, Algorithm::hedge_hc);
    CHECK(b.area_side == 8000.0);
    CHECK(b.sus == 10);
    for (const auto& cfg : {g, m, b}) {
        CHECK(cfg.channels == 10);
        CHECK(cfg.pfa == 0.05);
        CHECK(cfg.packet_loss == 0.05);
        CHECK(cfg.hed_components == 3);
        CHECK(cfg.num_samples == 10);
        CHECK(cfg.carrier_ghz == 6.0);
        CHECK(cfg.noise_variance == doctest::Approx(std::pow(10.0, -11.5)).epsilon(1e-14));
    }
}

TEST_CASE("finalize resolves per-algorithm defaults") {
    auto check_defaults = [](Algorithm a, double beta, double rho, double discount) {
        ScenarioConfig cfg;
        cfg.algorithm = a;
        finalize_config(cfg);
        CHECK(cfg.beta == beta);
        CHECK(cfg.rho == rho);
        CHECK(cfg.discount == discount);
    };
    check_defaults(Algorithm::hedge_hc, 0.88, 0.80, 1.0);
    check_defaults(Algorithm::hedge_sc, 0.99, 0.80, 1.0);
    check_defaults(Algorithm::hsc_bh, 0.99, 0.80, 1.0);
    check_defaults(Algorithm::perc_sc, 0.99, 0.80, 1.0);
    check_defaults(Algorithm::dhedge_hc, 0.05, 0.80, 0.80);
    check_defaults(Algorithm::dhedge_sc, 0.50, 0.80, 0.60);
    check_defaults(Algorithm::dperc_sc, 0.99, 0.40, 0.99);

    ScenarioConfig cfg;
    cfg.sus = 50;
    finalize_config(cfg);
    CHECK(cfg.mu == doctest::Approx(0.01).epsilon(1e-14));

    // explicit settings win over defaults
    ScenarioConfig cfg2;
    cfg2.algorithm = Algorithm::dhedge_sc;
    cfg2.beta = 0.3;
    cfg2.discount = 0.7;
    finalize_config(cfg2);
    CHECK(cfg2.beta == 0.3);
    CHECK(cfg2.discount == 0.7);
}

TEST_CASE("finalize validates ranges") {
    auto bad = [](auto&& mutate) {
        ScenarioConfig cfg;
        mutate(cfg);
        CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    };
    bad([](ScenarioConfig& c) { c.pfa = 0.0; });
    bad([](ScenarioConfig& c) { c.pfa = 1.5; });
    bad([](ScenarioConfig& c) { c.packet_loss = 1.0; });
    bad([](ScenarioConfig& c) { c.channels = 0; });
    bad([](ScenarioConfig& c) { c.sus = 0; });
    bad([](ScenarioConfig& c) { c.lambda_min = 0.0; });
    bad([](ScenarioConfig& c) { c.lambda_min = 2.0; c.lambda_max = 1.0; });
    bad([](ScenarioConfig& c) { c.lambda_max = 600.0; });
    bad([](ScenarioConfig& c) { c.beta = 0.0; });
    bad([](ScenarioConfig& c) { c.rho = 1.5; });
    bad([](ScenarioConfig& c) { c.discount = 1.5; });
    bad([](ScenarioConfig& c) { c.tau = 0.0; });
    bad([](ScenarioConfig& c) { c.mu = 1.0; });
    bad([](ScenarioConfig& c) { c.num_samples = 0; });
    bad([](ScenarioConfig& c) { c.noise_variance = 0.0; });
    bad([](ScenarioConfig& c) { c.budget = -1; });
    bad([](ScenarioConfig& c) { c.cost_per_sense = 0; });
    bad([](ScenarioConfig& c) { c.steps = 0; });
    bad([](ScenarioConfig& c) { c.mc_samples = 10; });
    bad([](ScenarioConfig& c) { c.deactivation = true; c.algorithm = Algorithm::perc_sc; });

    // pfa = 1 is a legal degenerate target
    ScenarioConfig cfg;
    cfg.pfa = 1.0;
    finalize_config(cfg);
    CHECK(cfg.pfa == 1.0);
}

TEST_CASE("parse_config_text applies preset then overrides") {
    auto cfg = parse_config_text(R"({
        "preset": "msc",
        "algorithm": "hedge-sc",
        "sus": 20,
        "beta": 0.95,
        "steps": 123,
        "seed": 9
    })");
    CHECK(cfg.preset == Preset::msc);
    CHECK(cfg.algorithm == Algorithm::hedge_sc);
    CHECK(cfg.area_side == 8000.0);
    CHECK(cfg.sus == 20);
    CHECK(cfg.beta == 0.95);
    CHECK(cfg.steps == 123);
    CHECK(cfg.seed == 9);
    // untouched preset values survive
    CHECK(cfg.channels == 10);
    CHECK(cfg.pfa == 0.05);
}

TEST_CASE("parse_config_text rejects unknown keys") {
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"stepz": 100})"),
                         "unknown config key: stepz", ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"preset": "gsc", "extra": 1})"), ConfigError);
}

TEST_CASE("parse_config_text rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[1,2,3]"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"steps": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"deactivation": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"algorithm": "qhedge"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"update_gating": "sometimes"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"pfa": 2.0})"), ConfigError);
}

TEST_CASE("parse_config_text update gating values") {
    auto a = parse_config_text(R"({"update_gating": "all"})");
    CHECK(a.update_gating == UpdateGating::all_steps);
    auto b = parse_config_text(R"({"update_gating": "idle-only"})");
    CHECK(b.update_gating == UpdateGating::idle_only);
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/no/such/config.json"), ConfigError);
}
