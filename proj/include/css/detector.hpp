#pragma once

#include "css/rng.hpp"

namespace css {

struct EnergyDetectorConfig {
    int num_samples = 10;        // N
    double noise_variance = 1.0; // sigma^2
    double pfa_target = 0.05;
};

// zeta = sigma^2 * Qinv_{chi2_N}(pfa)
double np_threshold(const EnergyDetectorConfig& cfg);

// sigma^2 * chi2_N when idle, (sigma_s^2 + sigma^2) * chi2_N when busy
double sense_energy(bool truth_busy, double signal_variance, const EnergyDetectorConfig& cfg, Rng& rng);

inline int hard_decision(double energy, double zeta) { return energy >= zeta ? 1 : 0; }

// P_d = Q_{chi2_N}(zeta / (sigma_s^2 + sigma^2))
double detector_pd(double zeta, double signal_variance, const EnergyDetectorConfig& cfg);

} // namespace css
