#include "css/perceptron.hpp"

#include "css/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace css {

static double quantile_sorted(const std::vector<double>& sorted, double q) {
    std::size_t m = sorted.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m)));
    if (k < 1) k = 1;
    if (k > m) k = m;
    return sorted[k - 1];
}

double perceptron_threshold(const double* w_row, std::size_t S, double sigma2, int N,
                            double pfa, std::size_t M, Rng& rng) {
    bool any = false;
    for (std::size_t i = 0; i < S; ++i) {
        if (w_row[i] != 0.0) any = true;
    }
    if (!any) throw std::runtime_error("perceptron_threshold: degenerate threshold");
    std::vector<double> sums(M);
    for (std::size_t m = 0; m < M; ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i < S; ++i) {
            s += w_row[i] * rng.gamma(0.5 * N, 2.0 * sigma2);
        }
        sums[m] = s;
    }
    std::sort(sums.begin(), sums.end());
    return quantile_sorted(sums, 1.0 - pfa);
}

double fold_bias(double obs, double w, double gamma_p, std::size_t S) {
    double denom = w;
    if (std::fabs(denom) < perc_eps_w) denom = denom < 0.0 ? -perc_eps_w : perc_eps_w;
    return obs - gamma_p / (static_cast<double>(S) * denom);
}

int perceptron_decide(const double* w_row, const double* folded_row, const uint8_t* active, std::size_t S) {
    double s = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
        if (active[i]) s += w_row[i] * folded_row[i];
    }
    return s >= 0.0 ? 1 : 0;
}

double perceptron_update(double w, double o_prime, int truth_busy, int decision_busy,
                         double rho, double discount) {
    if (truth_busy == decision_busy) throw std::logic_error("perceptron_update: update on correct decision");
    double delta = rho * o_prime;
    return truth_busy ? discount * w + delta : discount * w - delta;
}

PerceptronBank::PerceptronBank(const PerceptronConfig& cfg)
    : cfg_(cfg), w_(cfg.P * cfg.S, 1.0 / static_cast<double>(cfg.S)),
      cache_(cfg.P), masked_(cfg.S) {}

void PerceptronBank::set_weight(std::size_t j, std::size_t i, double v) {
    w_[j * cfg_.S + i] = v;
    cache_[j].valid = false;
}

void PerceptronBank::ensure_cache(std::size_t j, const uint8_t* active) {
    const std::size_t S = cfg_.S, M = cfg_.mc_samples;
    Cache& c = cache_[j];
    const double* w = w_.data() + j * S;
    for (std::size_t i = 0; i < S; ++i) masked_[i] = active[i] ? w[i] : 0.0;
    if (c.valid && c.fingerprint == masked_) return;
    bool any = false;
    for (std::size_t i = 0; i < S; ++i) {
        if (masked_[i] != 0.0) any = true;
    }
    if (!any) throw std::runtime_error("perceptron_threshold: degenerate threshold");
    if (c.h0.empty()) {
        Rng rng(substream_seed(cfg_.mc_seed, "percmc", j));
        c.h0.resize(M * S);
        for (double& v : c.h0) v = rng.gamma(0.5 * cfg_.num_samples, 2.0 * cfg_.sigma2);
    }
    c.sums.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        c.sums[m] = kernels::dot(masked_.data(), c.h0.data() + m * S, S);
    }
    std::sort(c.sums.begin(), c.sums.end());
    c.fingerprint = masked_;
    c.valid = true;
}

double PerceptronBank::threshold(std::size_t j, const uint8_t* active) {
    ensure_cache(j, active);
    return quantile_sorted(cache_[j].sums, 1.0 - cfg_.pfa);
}

double PerceptronBank::raw_sum(std::size_t j, const double* obs_row, const uint8_t* active) const {
    const double* w = w_.data() + j * cfg_.S;
    double s = 0.0;
    for (std::size_t i = 0; i < cfg_.S; ++i) {
        if (active[i]) s += w[i] * obs_row[i];
    }
    return s;
}

int PerceptronBank::decide(std::size_t j, const double* obs_row, const uint8_t* active) {
    double gp = threshold(j, active);
    const double* w = w_.data() + j * cfg_.S;
    double s = 0.0;
    for (std::size_t i = 0; i < cfg_.S; ++i) {
        if (active[i]) s += w[i] * fold_bias(obs_row[i], w[i], gp, cfg_.S);
    }
    return s >= 0.0 ? 1 : 0;
}

double PerceptronBank::empirical_pvalue(std::size_t j, double raw, const uint8_t* active) {
    ensure_cache(j, active);
    const std::vector<double>& s = cache_[j].sums;
    auto it = std::lower_bound(s.begin(), s.end(), raw);
    return static_cast<double>(s.end() - it) / static_cast<double>(s.size());
}

void PerceptronBank::update(std::size_t j, const double* obs_row, const uint8_t* active,
                            int agt_busy, int decision_busy) {
    double gp = threshold(j, active);
    double* w = w_.data() + j * cfg_.S;
    for (std::size_t i = 0; i < cfg_.S; ++i) {
        if (!active[i]) continue;
        double op = fold_bias(obs_row[i], w[i], gp, cfg_.S);
        w[i] = perceptron_update(w[i], op, agt_busy, decision_busy, cfg_.rho, cfg_.discount);
    }
    cache_[j].valid = false;
}

} // namespace css
