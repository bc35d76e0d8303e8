#pragma once

#include "css/core.hpp"
#include "css/rng.hpp"

namespace css {

inline constexpr double perc_eps_w = 1e-6;

// Empirical (1 - pfa) quantile of sum w_i * G_i, G_i ~ Gamma(N/2, 2 sigma^2).
double perceptron_threshold(const double* w_row, std::size_t S, double sigma2, int N,
                            double pfa, std::size_t M, Rng& rng);

// o' = o - gamma_p / (S * w); |w| below eps uses sign(w) * eps in the denominator.
double fold_bias(double obs, double w, double gamma_p, std::size_t S);

// busy iff sum of active w * o' >= 0
int perceptron_decide(const double* w_row, const double* folded_row, const uint8_t* active, std::size_t S);

// truth busy, decided idle: discount*w + rho*o'; truth idle, decided busy: discount*w - rho*o'.
// Throws when truth == decision.
double perceptron_update(double w, double o_prime, int truth_busy, int decision_busy,
                         double rho, double discount);

struct PerceptronConfig {
    std::size_t P = 1, S = 1;
    double rho = 0.80;
    double discount = 1.0;
    double pfa = 0.05;
    int num_samples = 10;
    double sigma2 = 1.0;
    std::size_t mc_samples = 10000;
    uint64_t mc_seed = 1;
};

// Signed per-channel weight rows, w0 = 1/S. Thresholds come from a per-channel
// Monte Carlo H0 sample drawn once from a fixed sub-stream; the weighted sums
// are recomputed whenever the masked weight row changes.
class PerceptronBank {
public:
    explicit PerceptronBank(const PerceptronConfig& cfg);

    const PerceptronConfig& config() const { return cfg_; }
    double weight(std::size_t j, std::size_t i) const { return w_[j * cfg_.S + i]; }
    void set_weight(std::size_t j, std::size_t i, double v);

    double threshold(std::size_t j, const uint8_t* active);
    double raw_sum(std::size_t j, const double* obs_row, const uint8_t* active) const;
    int decide(std::size_t j, const double* obs_row, const uint8_t* active);
    // Fraction of the H0 sample at or above raw (empirical tail).
    double empirical_pvalue(std::size_t j, double raw, const uint8_t* active);
    void update(std::size_t j, const double* obs_row, const uint8_t* active,
                int agt_busy, int decision_busy);

private:
    struct Cache {
        std::vector<double> h0;     // M x S gamma draws, lazily built
        std::vector<double> sums;   // sorted weighted sums
        std::vector<double> fingerprint;
        bool valid = false;
    };

    void ensure_cache(std::size_t j, const uint8_t* active);

    PerceptronConfig cfg_;
    std::vector<double> w_;
    std::vector<Cache> cache_;
    std::vector<double> masked_; // scratch
};

} // namespace css
