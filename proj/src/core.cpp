#include "css/core.hpp"

namespace css {

void normalize_weights(const double* w, const uint8_t* active, double* out, std::size_t S) {
    double total = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i]) {
            total += w[i];
            any = true;
        }
    }
    if (!any) throw std::runtime_error("no active detectors for channel");
    for (std::size_t i = 0; i < S; ++i) {
        out[i] = active[i] ? w[i] / total : 0.0;
    }
}

} // namespace css
