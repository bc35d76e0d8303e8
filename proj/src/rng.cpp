#include "css/rng.hpp"

#include <cmath>

namespace css {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

static uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t substream_seed(uint64_t master, std::string_view label, uint64_t index) {
    uint64_t state = master ^ fnv1a64(label);
    splitmix64(state);
    state += index;
    return splitmix64(state);
}

double Rng::exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

double Rng::gamma(double shape, double scale) {
    if (shape < 1.0) {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

double Rng::chi2(unsigned n) {
    if (n <= 64) {
        double s = 0.0;
        for (unsigned i = 0; i < n; ++i) {
            double z = normal();
            s += z * z;
        }
        return s;
    }
    return gamma(0.5 * n, 2.0);
}

} // namespace css
