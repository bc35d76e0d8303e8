#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "css/core.hpp"
#include "css/rng.hpp"

#include <numeric>
#include <vector>

using namespace css;

TEST_CASE("normalize_weights basic") {
    std::vector<double> w{0.88, 1.0};
    std::vector<uint8_t> a{1, 1};
    std::vector<double> out(2);
    normalize_weights(w.data(), a.data(), out.data(), 2);
    CHECK(out[0] == doctest::Approx(0.4680851063829787).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(0.5319148936170213).epsilon(1e-15));
    CHECK(out[0] + out[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize_weights masks inactive entries") {
    std::vector<double> w{2.0, 5.0, 3.0};
    std::vector<uint8_t> a{1, 0, 1};
    std::vector<double> out(3);
    normalize_weights(w.data(), a.data(), out.data(), 3);
    CHECK(out[0] == doctest::Approx(0.4));
    CHECK(out[1] == 0.0);
    CHECK(out[2] == doctest::Approx(0.6));
}

TEST_CASE("normalize_weights is scale invariant") {
    Rng rng(3);
    std::vector<double> w(16), ws(16), out1(16), out2(16);
    std::vector<uint8_t> a(16, 1);
    a[4] = a[9] = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = rng.uniform(1e-6, 5.0);
        ws[i] = w[i] * 1e12;
    }
    normalize_weights(w.data(), a.data(), out1.data(), w.size());
    normalize_weights(ws.data(), a.data(), out2.data(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(out1[i] == doctest::Approx(out2[i]).epsilon(1e-12));
    CHECK(std::accumulate(out1.begin(), out1.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("normalize_weights rejects fully masked rows") {
    std::vector<double> w{1.0, 1.0};
    std::vector<uint8_t> a{0, 0};
    std::vector<double> out(2);
    CHECK_THROWS_AS(normalize_weights(w.data(), a.data(), out.data(), 2), std::runtime_error);
}

TEST_CASE("expert_loss is zero-one") {
    CHECK(expert_loss(0, 0) == 0);
    CHECK(expert_loss(1, 1) == 0);
    CHECK(expert_loss(0, 1) == 1);
    CHECK(expert_loss(1, 0) == 1);
}

TEST_CASE("matrix row accessors address contiguous rows") {
    ObservationMatrix o(3, 4, CombiningMode::soft);
    o.row(1)[2] = 7.5;
    CHECK(o.values[1 * 4 + 2] == 7.5);
    o.active_row(2)[0] = 0;
    CHECK(o.active[2 * 4 + 0] == 0);

    WeightMatrix w(2, 5, 0.25);
    CHECK(w.row(1)[4] == 0.25);
    w.row(0)[3] = 9.0;
    CHECK(w.weights[3] == 9.0);
}
