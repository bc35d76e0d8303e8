#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "css/gamma.hpp"
#include "css/perceptron.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace css;

TEST_CASE("perceptron_threshold approximates the analytic quantile for one weight") {
    std::vector<double> w{1.0};
    Rng rng(substream_seed(3, "percmc", 0));
    // sum = G, G ~ chi2_2, so the 95th percentile is -2 ln 0.05
    double got = perceptron_threshold(w.data(), 1, 1.0, 2, 0.05, 100000, rng);
    CHECK(got == doctest::Approx(5.99146454710798).epsilon(0.02));
}

TEST_CASE("perceptron_threshold scales linearly with the weights") {
    std::vector<double> w{0.3, 0.7, 0.1};
    std::vector<double> w4{1.2, 2.8, 0.4};
    Rng a(42), b(42);
    double t1 = perceptron_threshold(w.data(), 3, 1.0, 10, 0.05, 20000, a);
    double t4 = perceptron_threshold(w4.data(), 3, 1.0, 10, 0.05, 20000, b);
    CHECK(t4 == doctest::Approx(4.0 * t1).epsilon(1e-12));
}

TEST_CASE("perceptron_threshold median and degenerate row") {
    std::vector<double> w{1.0};
    Rng rng(7);
    double med = perceptron_threshold(w.data(), 1, 1.0, 2, 0.5, 100000, rng);
    CHECK(med == doctest::Approx(2.0 * std::log(2.0)).epsilon(0.02));
    std::vector<double> z{0.0, 0.0};
    CHECK_THROWS_AS(perceptron_threshold(z.data(), 2, 1.0, 2, 0.5, 100, rng), std::runtime_error);
}

TEST_CASE("fold_bias reference points") {
    CHECK(fold_bias(10.0, 1.0, 20.0, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fold_bias(10.0, 2.0, 20.0, 2) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(fold_bias(3.0, 0.5, 0.0, 4) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("fold_bias recovers the thresholded sum") {
    std::vector<double> w{0.2, -0.4, 1.3, 0.8};
    std::vector<double> o{5.0, 2.0, 7.5, 0.3};
    double gp = 3.7;
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += w[i] * fold_bias(o[i], w[i], gp, 4);
    double raw = 0.0;
    for (std::size_t i = 0; i < 4; ++i) raw += w[i] * o[i];
    CHECK(s == doctest::Approx(raw - gp).epsilon(1e-12));
}

TEST_CASE("fold_bias guards tiny denominators") {
    double at_zero = fold_bias(1.0, 0.0, 2.0, 1);
    CHECK(at_zero == doctest::Approx(1.0 - 2.0 / perc_eps_w).epsilon(1e-12));
    double neg = fold_bias(1.0, -1e-9, 2.0, 1);
    CHECK(neg == doctest::Approx(1.0 + 2.0 / perc_eps_w).epsilon(1e-12));
    // well-conditioned weights are untouched
    CHECK(fold_bias(1.0, 0.5, 2.0, 1) == doctest::Approx(1.0 - 4.0).epsilon(1e-14));
}

TEST_CASE("perceptron_decide sign rule with tie busy") {
    std::vector<double> w{1.0};
    std::vector<double> o{-3.0};
    std::vector<uint8_t> a{1};
    CHECK(perceptron_decide(w.data(), o.data(), a.data(), 1) == 0);
    o[0] = 0.0;
    CHECK(perceptron_decide(w.data(), o.data(), a.data(), 1) == 1);
    o[0] = 0.5;
    CHECK(perceptron_decide(w.data(), o.data(), a.data(), 1) == 1);
    a[0] = 0; // masked sum is empty, ties busy
    CHECK(perceptron_decide(w.data(), o.data(), a.data(), 1) == 1);
}

TEST_CASE("perceptron_update reference points") {
    CHECK(perceptron_update(0.0, 5.0, 1, 0, 0.8, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(perceptron_update(4.0, 5.0, 0, 1, 0.8, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(perceptron_update(4.0, 0.0, 1, 0, 0.8, 0.99) == doctest::Approx(3.96).epsilon(1e-14));
    CHECK_THROWS_AS(perceptron_update(1.0, 1.0, 1, 1, 0.8, 1.0), std::logic_error);
    CHECK_THROWS_AS(perceptron_update(1.0, 1.0, 0, 0, 0.8, 1.0), std::logic_error);
}

TEST_CASE("bank starts uniform and thresholds deterministically") {
    PerceptronConfig cfg;
    cfg.P = 3;
    cfg.S = 5;
    cfg.mc_seed = 11;
    PerceptronBank bank(cfg);
    PerceptronBank bank2(cfg);
    std::vector<uint8_t> act(cfg.S, 1);
    for (std::size_t j = 0; j < cfg.P; ++j) {
        for (std::size_t i = 0; i < cfg.S; ++i) CHECK(bank.weight(j, i) == 0.2);
        CHECK(bank.threshold(j, act.data()) == bank2.threshold(j, act.data()));
        CHECK(bank.threshold(j, act.data()) > 0.0);
    }
    // channels draw independent H0 samples
    CHECK(bank.threshold(0, act.data()) != bank.threshold(1, act.data()));
}

TEST_CASE("bank threshold tracks weight and mask changes") {
    PerceptronConfig cfg;
    cfg.P = 1;
    cfg.S = 4;
    cfg.mc_samples = 20000;
    PerceptronBank bank(cfg);
    std::vector<uint8_t> act(4, 1);
    double t0 = bank.threshold(0, act.data());
    CHECK(bank.threshold(0, act.data()) == t0); // cached
    bank.set_weight(0, 2, 0.5);
    double t1 = bank.threshold(0, act.data());
    CHECK(t1 > t0);
    act[2] = 0;
    double t2 = bank.threshold(0, act.data());
    CHECK(t2 < t1);
    act[2] = 1;
    CHECK(bank.threshold(0, act.data()) == doctest::Approx(t1).epsilon(1e-15));
}

TEST_CASE("bank empirical p-value inverts the threshold") {
    PerceptronConfig cfg;
    cfg.P = 1;
    cfg.S = 3;
    cfg.pfa = 0.05;
    PerceptronBank bank(cfg);
    std::vector<uint8_t> act(3, 1);
    double gp = bank.threshold(0, act.data());
    double p = bank.empirical_pvalue(0, gp, act.data());
    CHECK(p >= 0.05 - 1e-12);
    CHECK(p <= 0.05 + 1.0 / static_cast<double>(cfg.mc_samples) + 1e-12);
    CHECK(bank.empirical_pvalue(0, -1e9, act.data()) == 1.0);
    CHECK(bank.empirical_pvalue(0, 1e18, act.data()) == 0.0);
}

TEST_CASE("bank update folds the bias and learns toward busy on misses") {
    PerceptronConfig cfg;
    cfg.P = 1;
    cfg.S = 2;
    cfg.rho = 0.8;
    PerceptronBank bank(cfg);
    std::vector<uint8_t> act{1, 1};
    double gp = bank.threshold(0, act.data());
    std::vector<double> obs{40.0, 35.0};
    std::vector<double> expect(2);
    for (std::size_t i = 0; i < 2; ++i)
        expect[i] = perceptron_update(0.5, fold_bias(obs[i], 0.5, gp, 2), 1, 0, cfg.rho, 1.0);
    bank.update(0, obs.data(), act.data(), 1, 0);
    CHECK(bank.weight(0, 0) == doctest::Approx(expect[0]).epsilon(1e-13));
    CHECK(bank.weight(0, 1) == doctest::Approx(expect[1]).epsilon(1e-13));
    // larger weights on loud observations raise the threshold
    CHECK(bank.threshold(0, act.data()) > gp);
}

TEST_CASE("mistake-driven training lifts detection, recalibration pins false alarms") {
    PerceptronConfig cfg;
    cfg.P = 1;
    cfg.S = 6;
    cfg.num_samples = 10;
    cfg.sigma2 = 1.0;
    cfg.pfa = 0.05;
    cfg.mc_samples = 20000;
    cfg.mc_seed = 5;
    PerceptronBank bank(cfg);
    std::vector<uint8_t> act(cfg.S, 1);

    // detectors 0 and 1 see a 0 dB signal, the rest see noise only
    auto draw = [&](bool busy, Rng& rng) {
        std::vector<double> obs(cfg.S);
        for (std::size_t i = 0; i < cfg.S; ++i) {
            double s2 = (i < 2 && busy) ? 1.0 : 0.0;
            obs[i] = (1.0 + s2) * rng.chi2(10);
        }
        return obs;
    };
    auto evaluate = [&](uint64_t seed) {
        Rng rng(seed);
        int pd = 0, fa = 0, n = 400;
        for (int t = 0; t < n; ++t) {
            auto busy_obs = draw(true, rng);
            pd += bank.decide(0, busy_obs.data(), act.data());
            auto idle_obs = draw(false, rng);
            fa += bank.decide(0, idle_obs.data(), act.data());
        }
        return std::pair<double, double>{static_cast<double>(pd) / n,
                                         static_cast<double>(fa) / n};
    };

    auto [pd0, fa0] = evaluate(101);
    CHECK(fa0 > 0.01);
    CHECK(fa0 < 0.12); // threshold calibration holds before any training

    Rng rng(999);
    int updates = 0;
    for (int t = 0; t < 800; ++t) {
        bool busy = (rng.next_u64() & 1) != 0;
        auto obs = draw(busy, rng);
        int dec = bank.decide(0, obs.data(), act.data());
        if (busy && dec == 0) {
            bank.update(0, obs.data(), act.data(), 1, 0);
            ++updates;
        }
    }
    CHECK(updates > 50);
    bool moved = false;
    for (std::size_t i = 0; i < cfg.S; ++i) moved = moved || bank.weight(0, i) != 1.0 / 6.0;
    CHECK(moved);

    // whatever the weights became, the recalibrated threshold keeps the
    // false-alarm rate anchored near the target
    auto [pd1, fa1] = evaluate(101);
    (void)pd1;
    CHECK(fa1 < 0.15);
}
