#pragma once

#include "css/hedge.hpp"

#include <cstdint>
#include <vector>

namespace css {

// P_j = Q_{Gamma(k,theta)}(f~_j)
double p_value(double f_tilde, const MomentMatchedGamma& g);

// Step-up rule: k = largest j with P_(j) <= (j/P) alpha; channels at or below
// the k-th smallest p-value (ties included) are declared busy.
std::vector<std::size_t> bh_select(const std::vector<double>& p_values, double alpha);

// 1 - (1 - pfa)^P
double fwer(double pfa, int P);

struct SwitchState {
    enum class Mode { bh, plain };
    Mode mode = Mode::bh;
    uint64_t collision_events = 0;
    uint64_t transmission_attempts = 0;
    double tau = 0.02;
    bool latch = false; // once plain, stay plain
};

void switch_update(SwitchState& st, bool step_collided, bool step_attempted);

} // namespace css
