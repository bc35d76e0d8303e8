#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "css/detector.hpp"
#include "css/gamma.hpp"

#include <cmath>
#include <stdexcept>

using namespace css;

TEST_CASE("np_threshold matches chi-square quantile scaled by noise power") {
    EnergyDetectorConfig cfg;
    cfg.num_samples = 2;
    cfg.noise_variance = 1.0;
    cfg.pfa_target = 0.05;
    CHECK(np_threshold(cfg) == doctest::Approx(5.99146454710798).epsilon(1e-12));

    cfg.noise_variance = 4.0;
    CHECK(np_threshold(cfg) == doctest::Approx(4.0 * 5.99146454710798).epsilon(1e-12));

    cfg.num_samples = 10;
    cfg.noise_variance = 1.0;
    CHECK(np_threshold(cfg) == doctest::Approx(18.3070380532751).epsilon(1e-12));

    cfg.num_samples = 50;
    CHECK(np_threshold(cfg) == doctest::Approx(67.5048065495412).epsilon(1e-12));
}

TEST_CASE("np_threshold degenerate and invalid targets") {
    EnergyDetectorConfig cfg;
    cfg.pfa_target = 1.0;
    CHECK(np_threshold(cfg) == 0.0);
    cfg.pfa_target = 0.0;
    CHECK_THROWS_AS(np_threshold(cfg), std::invalid_argument);
    cfg.pfa_target = 1.5;
    CHECK_THROWS_AS(np_threshold(cfg), std::invalid_argument);
}

TEST_CASE("empirical false-alarm rate matches the target") {
    for (int n : {2, 10, 50}) {
        for (double s2 : {1.0, 4.0}) {
            EnergyDetectorConfig cfg;
            cfg.num_samples = n;
            cfg.noise_variance = s2;
            cfg.pfa_target = 0.05;
            double zeta = np_threshold(cfg);
            Rng rng(substream_seed(99, "detector-test", 10 * n + (s2 > 1)));
            int trials = 40000, alarms = 0;
            for (int t = 0; t < trials; ++t)
                alarms += hard_decision(sense_energy(false, 0.0, cfg, rng), zeta);
            CHECK(static_cast<double>(alarms) / trials == doctest::Approx(0.05).epsilon(0.25));
        }
    }
}

TEST_CASE("sense_energy means scale with occupancy and signal power") {
    EnergyDetectorConfig cfg;
    cfg.num_samples = 10;
    cfg.noise_variance = 1.0;
    Rng rng(5150);
    int trials = 60000;
    double idle = 0.0, busy = 0.0;
    for (int t = 0; t < trials; ++t) {
        idle += sense_energy(false, 9.0, cfg, rng);
        busy += sense_energy(true, 9.0, cfg, rng);
    }
    // E = N*sigma^2 idle, N*(sigma_s^2 + sigma^2) busy
    CHECK(idle / trials == doctest::Approx(10.0).epsilon(0.01));
    CHECK(busy / trials == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("hard_decision boundary is busy-at-threshold") {
    CHECK(hard_decision(2.0, 2.0) == 1);
    CHECK(hard_decision(1.9999999, 2.0) == 0);
    CHECK(hard_decision(2.1, 2.0) == 1);
}

TEST_CASE("detector_pd closed form") {
    EnergyDetectorConfig cfg;
    cfg.num_samples = 2;
    cfg.noise_variance = 1.0;
    cfg.pfa_target = 0.05;
    double zeta = np_threshold(cfg);
    // sigma_s^2 = 0 collapses to the false-alarm rate
    CHECK(detector_pd(zeta, 0.0, cfg) == doctest::Approx(0.05).epsilon(1e-10));
    // N=2: P_d = exp(-zeta / (2 (sigma_s^2 + 1)))
    CHECK(detector_pd(zeta, 9.0, cfg) ==
          doctest::Approx(std::exp(-zeta / 20.0)).epsilon(1e-12));
    CHECK(detector_pd(zeta, 9.0, cfg) == doctest::Approx(0.7411344491069478).epsilon(1e-12));

    double prev = 0.0;
    for (double s : {0.1, 0.5, 1.0, 3.0, 9.0, 30.0}) {
        double pd = detector_pd(zeta, s, cfg);
        CHECK(pd > prev);
        prev = pd;
    }
}

TEST_CASE("empirical detection probability matches detector_pd") {
    EnergyDetectorConfig cfg;
    cfg.num_samples = 10;
    cfg.noise_variance = 2.0;
    cfg.pfa_target = 0.1;
    double zeta = np_threshold(cfg);
    double pd = detector_pd(zeta, 6.0, cfg);
    Rng rng(substream_seed(99, "detector-test", 77));
    int trials = 60000, hits = 0;
    for (int t = 0; t < trials; ++t)
        hits += hard_decision(sense_energy(true, 6.0, cfg, rng), zeta);
    CHECK(static_cast<double>(hits) / trials == doctest::Approx(pd).epsilon(0.02));
}
