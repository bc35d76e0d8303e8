#include "css/baselines.hpp"

namespace css {

int or_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S) {
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i] && bits[i]) return 1;
    }
    return 0;
}

int and_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S) {
    bool any = false;
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i]) {
            any = true;
            if (!bits[i]) return 0;
        }
    }
    return any ? 1 : 0;
}

int majority_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S) {
    std::size_t n = 0, ones = 0;
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i]) {
            ++n;
            ones += bits[i];
        }
    }
    if (n == 0) return 0;
    return 2 * ones >= n ? 1 : 0;
}

} // namespace css
