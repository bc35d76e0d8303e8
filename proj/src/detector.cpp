#include "css/detector.hpp"

#include "css/gamma.hpp"

#include <stdexcept>

namespace css {

static void check(const EnergyDetectorConfig& cfg) {
    if (cfg.num_samples < 1) throw std::invalid_argument("detector: N must be >= 1");
    if (!(cfg.noise_variance > 0.0)) throw std::invalid_argument("detector: noise variance must be positive");
    if (!(cfg.pfa_target > 0.0 && cfg.pfa_target <= 1.0)) throw std::invalid_argument("detector: pfa must lie in (0,1]");
}

double np_threshold(const EnergyDetectorConfig& cfg) {
    check(cfg);
    if (cfg.pfa_target == 1.0) return 0.0;
    return cfg.noise_variance * chi2_tail_inverse(static_cast<unsigned>(cfg.num_samples), cfg.pfa_target);
}

double sense_energy(bool truth_busy, double signal_variance, const EnergyDetectorConfig& cfg, Rng& rng) {
    double var = cfg.noise_variance + (truth_busy ? signal_variance : 0.0);
    return var * rng.chi2(static_cast<unsigned>(cfg.num_samples));
}

double detector_pd(double zeta, double signal_variance, const EnergyDetectorConfig& cfg) {
    check(cfg);
    return chi2_tail(static_cast<unsigned>(cfg.num_samples), zeta / (signal_variance + cfg.noise_variance));
}

} // namespace css
