#include "css/fdr.hpp"

#include "css/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace css {

double p_value(double f_tilde, const MomentMatchedGamma& g) {
    return gamma_tail(g.k, g.theta, f_tilde);
}

std::vector<std::size_t> bh_select(const std::vector<double>& p_values, double alpha) {
    const std::size_t P = p_values.size();
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bh_select: p-values must lie in [0,1]");
    }
    std::vector<double> sorted(p_values);
    std::sort(sorted.begin(), sorted.end());
    double cutoff = -1.0;
    for (std::size_t j = P; j >= 1; --j) {
        if (sorted[j - 1] <= (static_cast<double>(j) / static_cast<double>(P)) * alpha) {
            cutoff = sorted[j - 1];
            break;
        }
    }
    std::vector<std::size_t> rejected;
    if (cutoff < 0.0) return rejected;
    for (std::size_t i = 0; i < P; ++i) {
        if (p_values[i] <= cutoff) rejected.push_back(i);
    }
    return rejected;
}

double fwer(double pfa, int P) {
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("fwer: pfa must lie in (0,1)");
    if (P < 1) throw std::invalid_argument("fwer: P must be >= 1");
    return 1.0 - std::pow(1.0 - pfa, P);
}

void switch_update(SwitchState& st, bool step_collided, bool step_attempted) {
    if (step_attempted) ++st.transmission_attempts;
    if (step_collided) ++st.collision_events;
    if (st.transmission_attempts == 0) {
        st.mode = SwitchState::Mode::bh;
        return;
    }
    double frac = static_cast<double>(st.collision_events) / static_cast<double>(st.transmission_attempts);
    if (frac > st.tau) {
        st.mode = SwitchState::Mode::plain;
    } else if (!st.latch || st.mode == SwitchState::Mode::bh) {
        st.mode = SwitchState::Mode::bh;
    }
}

} // namespace css
