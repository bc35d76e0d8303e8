#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace css {

uint64_t splitmix64(uint64_t& state);

// Deterministic sub-stream seed for a named component of a run.
uint64_t substream_seed(uint64_t master, std::string_view label, uint64_t index = 0);

// mt19937_64 with pinned value->double transforms, so trajectories depend
// only on this code and the standardized engine sequence.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // [0, 1), 53-bit resolution
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential(double rate);

    double normal();

    // Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
    double gamma(double shape, double scale);

    // Sum of n standard-normal squares for n <= 64, gamma(n/2, 2) beyond.
    double chi2(unsigned n);

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace css
