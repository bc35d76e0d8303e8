#include "css/hedge.hpp"

#include "css/gamma.hpp"
#include "css/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace css {

MomentMatchedGamma moment_match(const double* p_row, std::size_t S, double sigma2, int N) {
    double s2 = kernels::sumsq(p_row, S);
    if (!(s2 > 0.0)) throw std::runtime_error("moment_match: empty weight row");
    MomentMatchedGamma g;
    g.theta = 2.0 * sigma2 * s2;
    g.k = N / (2.0 * s2);
    return g;
}

double soft_threshold(const MomentMatchedGamma& g, double pfa) {
    if (pfa == 1.0) return 0.0;
    return gamma_tail_inverse(g.k, g.theta, pfa);
}

double hedge_combine(const double* p_row, const double* obs_row, const uint8_t* active, std::size_t S) {
    double s = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i]) s += p_row[i] * obs_row[i];
    }
    return s;
}

double dhedge_update(double w, int loss, double beta, double discount) {
    double base = discount == 1.0 ? w : std::pow(w, discount);
    return loss ? base * beta : base;
}

void derive_expert_decisions(const double* obs_row, double zeta, uint8_t* out, std::size_t S) {
    for (std::size_t i = 0; i < S; ++i) out[i] = obs_row[i] >= zeta ? 1 : 0;
}

HedgeBank::HedgeBank(const HedgeConfig& cfg)
    : cfg_(cfg), w_(cfg.P, cfg.S, cfg.w0), mm_(cfg.P) {}

DecisionVector HedgeBank::decide(const ObservationMatrix& obs) {
    const std::size_t P = cfg_.P, S = cfg_.S;
    DecisionVector d;
    d.soft.assign(P, 0.0);
    d.thresholds.assign(P, std::numeric_limits<double>::quiet_NaN());
    d.busy.assign(P, 1);
    for (std::size_t j = 0; j < P; ++j) {
        const uint8_t* act = obs.active_row(j);
        bool any = std::any_of(act, act + S, [](uint8_t a) { return a != 0; });
        if (!any) continue;
        normalize_weights(w_.row(j), act, w_.norm_row(j), S);
        double f = hedge_combine(w_.norm_row(j), obs.row(j), act, S);
        d.soft[j] = f;
        if (cfg_.mode == CombiningMode::hard) {
            d.thresholds[j] = 0.5;
            // f >= 1/2 compared in unnormalized form; exact at the uniform
            // start where the normalized sum rounds just below one half
            double numer = hedge_combine(w_.row(j), obs.row(j), act, S);
            double denom = 0.0;
            for (std::size_t i = 0; i < S; ++i) {
                if (act[i]) denom += w_.weights[j * S + i];
            }
            d.busy[j] = 2.0 * numer >= denom ? 1 : 0;
        } else {
            mm_[j] = moment_match(w_.norm_row(j), S, cfg_.sigma2, cfg_.num_samples);
            double gamma_j = soft_threshold(mm_[j], cfg_.pfa);
            d.thresholds[j] = gamma_j;
            d.busy[j] = f >= gamma_j ? 1 : 0;
        }
    }
    return d;
}

void HedgeBank::update(const uint8_t* expert_bits, const uint8_t* agt, const uint8_t* active,
                       const uint8_t* apply) {
    const std::size_t P = cfg_.P, S = cfg_.S;
    for (std::size_t j = 0; j < P; ++j) {
        if (!apply[j]) continue;
        double* w = w_.row(j);
        const uint8_t* bits = expert_bits + j * S;
        const uint8_t* act = active + j * S;
        int g = agt[j];
        for (std::size_t i = 0; i < S; ++i) {
            if (!act[i]) continue;
            int loss = expert_loss(bits[i], g);
            w[i] = cfg_.discount == 1.0 ? hedge_update(w[i], loss, cfg_.beta)
                                        : dhedge_update(w[i], loss, cfg_.beta, cfg_.discount);
            if (w[i] < weight_floor) w[i] = weight_floor;
        }
    }
    ++steps_;
    if (steps_ % renorm_interval == 0) {
        for (std::size_t j = 0; j < P; ++j) {
            double* w = w_.row(j);
            double m = *std::max_element(w, w + S);
            if (m > 0.0 && m < renorm_trigger) {
                for (std::size_t i = 0; i < S; ++i) w[i] /= m;
            }
        }
    }
}

} // namespace css
