#pragma once

#include "css/core.hpp"

namespace css {

struct MomentMatchedGamma {
    double k = 0.0;
    double theta = 0.0;
};

// theta = 2 sigma^2 sum(p^2), k = N / (2 sum(p^2)); k * theta = N sigma^2.
MomentMatchedGamma moment_match(const double* p_row, std::size_t S, double sigma2, int N);

// gamma_j = Qinv_{Gamma(k,theta)}(pfa)
double soft_threshold(const MomentMatchedGamma& g, double pfa);

// f~_j = sum of p * o over active
double hedge_combine(const double* p_row, const double* obs_row, const uint8_t* active, std::size_t S);

inline int hard_decide(double f_tilde) { return f_tilde >= 0.5 ? 1 : 0; }

inline double hedge_update(double w, int loss, double beta) { return loss ? w * beta : w; }

double dhedge_update(double w, int loss, double beta, double discount);

// d_ji = 1[e_ji >= zeta]
void derive_expert_decisions(const double* obs_row, double zeta, uint8_t* out, std::size_t S);

struct HedgeConfig {
    std::size_t P = 1, S = 1;
    CombiningMode mode = CombiningMode::hard;
    double beta = 0.88;
    double discount = 1.0;
    double w0 = 1.0;
    int num_samples = 10;
    double sigma2 = 1.0;
    double pfa = 0.05;
};

// Per-channel Hedge rows over S experts. Weights are floored at 1e-300 and a
// row is rescaled by its max every renorm_interval steps if the max has
// drifted below 1e-155 (scale-invariant for decisions).
class HedgeBank {
public:
    static constexpr double weight_floor = 1e-300;
    static constexpr double renorm_trigger = 1e-155;
    static constexpr uint64_t renorm_interval = 1000;

    explicit HedgeBank(const HedgeConfig& cfg);

    const HedgeConfig& config() const { return cfg_; }
    const WeightMatrix& weights() const { return w_; }
    double weight(std::size_t j, std::size_t i) const { return w_.weights[j * cfg_.S + i]; }
    void set_weight(std::size_t j, std::size_t i, double v) { w_.weights[j * cfg_.S + i] = v; }

    // Refreshes normalized rows against the mask, then decides every channel.
    // Channels with no active detector decide busy with threshold NaN.
    DecisionVector decide(const ObservationMatrix& obs);

    // Moment-matched parameters of channel j from the last decide() call.
    const MomentMatchedGamma& row_gamma(std::size_t j) const { return mm_[j]; }
    const double* normalized_row(std::size_t j) const { return w_.norm_row(j); }

    // One loss application per active pair on channels with apply[j] != 0;
    // expert bits compared against agt. Advances the renorm step counter.
    void update(const uint8_t* expert_bits, const uint8_t* agt, const uint8_t* active,
                const uint8_t* apply);

    uint64_t steps() const { return steps_; }

private:
    HedgeConfig cfg_;
    WeightMatrix w_;
    std::vector<MomentMatchedGamma> mm_;
    uint64_t steps_ = 0;
};

} // namespace css
