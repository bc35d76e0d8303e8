#include "css/engine.hpp"

#include "css/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace css {

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg), P_(cfg.channels), S_(cfg.sus),
      traffic_rng_(substream_seed(cfg.seed, "traffic")),
      mobility_rng_(substream_seed(cfg.seed, "mobility")),
      sense_rng_(substream_seed(cfg.seed, "sense")),
      probe_rng_(substream_seed(cfg.seed, "probe")),
      obs_(cfg.channels, cfg.sus,
           algo_is_soft(cfg.algorithm) ? CombiningMode::soft : CombiningMode::hard) {
    det_.num_samples = cfg_.num_samples;
    det_.noise_variance = cfg_.noise_variance;
    det_.pfa_target = cfg_.pfa;
    zeta_ = np_threshold(det_);

    Rng topo_rng(substream_seed(cfg_.seed, "topology"));
    topo_.area_side = cfg_.area_side;
    topo_.carrier_ghz = cfg_.carrier_ghz;
    topo_.pu_tx_db = cfg_.pu_tx_db;
    topo_.pu_x.resize(P_);
    topo_.pu_y.resize(P_);
    topo_.su_x.resize(S_);
    topo_.su_y.resize(S_);
    for (std::size_t j = 0; j < P_; ++j) {
        topo_.pu_x[j] = topo_rng.uniform(0.0, cfg_.area_side);
        topo_.pu_y[j] = topo_rng.uniform(0.0, cfg_.area_side);
    }
    for (std::size_t i = 0; i < S_; ++i) {
        topo_.su_x[i] = topo_rng.uniform(0.0, cfg_.area_side);
        topo_.su_y[i] = topo_rng.uniform(0.0, cfg_.area_side);
    }
    compute_gains(topo_, gains_);

    traffic_models_.resize(P_);
    double log_lo = std::log(cfg_.lambda_min), log_hi = std::log(cfg_.lambda_max);
    for (std::size_t j = 0; j < P_; ++j) {
        TrafficModel& m = traffic_models_[j];
        m.p.resize(cfg_.hed_components);
        m.lambda.resize(cfg_.hed_components);
        double total = 0.0;
        for (int k = 0; k < cfg_.hed_components; ++k) {
            m.lambda[k] = std::exp(traffic_rng_.uniform(log_lo, log_hi));
            m.p[k] = traffic_rng_.exponential(1.0);
            total += m.p[k];
        }
        for (double& pk : m.p) pk /= total;
    }
    traffic_init(traffic_states_, traffic_models_, traffic_rng_);

    mob_model_.pu_mobile = cfg_.pu_mobile;
    mob_model_.su_mobile = cfg_.su_mobile;
    mob_model_.speed = cfg_.speed;
    mob_model_.step_duration = cfg_.step_duration;
    mobility_init(mob_state_, P_, S_, mobility_rng_);

    if (algo_is_hedge(cfg_.algorithm)) {
        HedgeConfig hc;
        hc.P = P_;
        hc.S = S_;
        hc.mode = algo_is_soft(cfg_.algorithm) ? CombiningMode::soft : CombiningMode::hard;
        hc.beta = cfg_.beta;
        hc.discount = cfg_.discount;
        hc.w0 = cfg_.w0;
        hc.num_samples = cfg_.num_samples;
        hc.sigma2 = cfg_.noise_variance;
        hc.pfa = cfg_.pfa;
        hedge_ = std::make_unique<HedgeBank>(hc);
    } else if (algo_is_perceptron(cfg_.algorithm)) {
        PerceptronConfig pc;
        pc.P = P_;
        pc.S = S_;
        pc.rho = cfg_.rho;
        pc.discount = cfg_.discount;
        pc.pfa = cfg_.pfa;
        pc.num_samples = cfg_.num_samples;
        pc.sigma2 = 1.0; // observations are noise-normalized energies
        pc.mc_samples = cfg_.mc_samples;
        pc.mc_seed = cfg_.seed;
        perc_ = std::make_unique<PerceptronBank>(pc);
    }

    ledger_ = EnergyLedger(S_, cfg_.budget, cfg_.cost_per_sense);
    switch_.tau = cfg_.tau;
    switch_.latch = cfg_.switch_latch;
    deact_.assign(P_ * S_, 1);
    energies_.assign(P_ * S_, 0.0);
    perc_obs_.assign(P_ * S_, 0.0);
    bits_.assign(P_ * S_, 0);
    eff_.assign(P_ * S_, 0);
    busy_.assign(P_, 0);
    agt_.assign(P_, 1);
    apply_.assign(P_, 1);
    p_scratch_.assign(P_ * S_, 0.0);
    log_.S = S_;
    log_.per_su_sense.assign(S_, 0);
    log_.records.reserve(cfg_.steps);
}

void Simulation::set_gain_override(std::vector<double> gains) {
    if (gains.size() != P_ * S_) throw std::invalid_argument("gain override size mismatch");
    gains_ = std::move(gains);
    gain_override_ = true;
}

void Simulation::enable_loss_audit() {
    loss_audit_ = true;
    loss_counts_.assign(P_ * S_, 0);
}

void Simulation::fuse(DecisionVector& dec) {
    const Algorithm a = cfg_.algorithm;
    if (hedge_) {
        dec = hedge_->decide(obs_);
    } else if (perc_) {
        dec.soft.assign(P_, 0.0);
        dec.thresholds.assign(P_, std::numeric_limits<double>::quiet_NaN());
        dec.busy.assign(P_, 1);
        for (std::size_t j = 0; j < P_; ++j) {
            const uint8_t* act = eff_.data() + j * S_;
            if (std::none_of(act, act + S_, [](uint8_t v) { return v != 0; })) continue;
            dec.soft[j] = perc_->raw_sum(j, perc_obs_.data() + j * S_, act);
            dec.thresholds[j] = perc_->threshold(j, act);
            dec.busy[j] = static_cast<uint8_t>(perc_->decide(j, perc_obs_.data() + j * S_, act));
        }
    } else {
        dec.soft.assign(P_, 0.0);
        dec.thresholds.assign(P_, 0.5);
        dec.busy.assign(P_, 1);
        for (std::size_t j = 0; j < P_; ++j) {
            const uint8_t* act = eff_.data() + j * S_;
            const uint8_t* bits = bits_.data() + j * S_;
            if (std::none_of(act, act + S_, [](uint8_t v) { return v != 0; })) continue;
            int b = 0;
            if (a == Algorithm::or_rule) b = or_fuse(bits, act, S_);
            else if (a == Algorithm::and_rule) b = and_fuse(bits, act, S_);
            else b = majority_fuse(bits, act, S_);
            dec.busy[j] = static_cast<uint8_t>(b);
        }
    }

    bool bh_now = algo_uses_bh(a) &&
                  (!algo_uses_switch(a) || switch_.mode == SwitchState::Mode::bh);
    if (bh_now) {
        std::vector<double> pvals(P_);
        for (std::size_t j = 0; j < P_; ++j) {
            const uint8_t* act = eff_.data() + j * S_;
            if (std::none_of(act, act + S_, [](uint8_t v) { return v != 0; })) {
                pvals[j] = 0.0;
                continue;
            }
            if (hedge_) {
                pvals[j] = p_value(dec.soft[j], hedge_->row_gamma(j));
            } else {
                pvals[j] = perc_->empirical_pvalue(j, dec.soft[j], act);
            }
        }
        std::fill(dec.busy.begin(), dec.busy.end(), 0);
        for (std::size_t j : bh_select(pvals, cfg_.pfa)) dec.busy[j] = 1;
    }
}

void Simulation::step() {
    ++n_;
    double alive_now = cfg_.budget > 0 ? alive_fraction(ledger_) : 1.0;

    traffic_step(traffic_states_, traffic_models_, traffic_rng_, busy_.data());

    if ((mob_model_.pu_mobile || mob_model_.su_mobile) && !gain_override_) {
        move_nodes(topo_, mob_model_, mob_state_, mobility_rng_);
        compute_gains(topo_, gains_);
    }

    // sensing over deactivation-mask & alive
    std::vector<int> sense_counts(S_, 0);
    for (std::size_t j = 0; j < P_; ++j) {
        for (std::size_t i = 0; i < S_; ++i) {
            std::size_t idx = j * S_ + i;
            bool on = deact_[idx] && ledger_.alive[i];
            eff_[idx] = on ? 1 : 0;
            if (!on) {
                energies_[idx] = 0.0;
                perc_obs_[idx] = 0.0;
                bits_[idx] = 0;
                continue;
            }
            double e = sense_energy(busy_[j] != 0, gains_[idx], det_, sense_rng_);
            energies_[idx] = e;
            perc_obs_[idx] = e / det_.noise_variance;
            bits_[idx] = e >= zeta_ ? 1 : 0;
            ++sense_counts[i];
        }
    }
    std::copy(eff_.begin(), eff_.end(), obs_.active.begin());
    if (obs_.mode == CombiningMode::soft) {
        std::copy(energies_.begin(), energies_.end(), obs_.values.begin());
    } else {
        for (std::size_t k = 0; k < P_ * S_; ++k) obs_.values[k] = bits_[k];
    }

    DecisionVector dec;
    fuse(dec);

    // probes, AGT, switch bookkeeping
    uint64_t pu_coll = 0, su_att = 0, su_coll = 0;
    for (std::size_t j = 0; j < P_; ++j) {
        ProbeOutcome out = observe_agt(dec.busy[j], busy_[j], cfg_.packet_loss,
                                       ledger_.alive, rr_, probe_rng_, agt_[j]);
        su_att += out.attempted;
        su_coll += out.collided;
        pu_coll += out.collided;
        if (algo_uses_switch(cfg_.algorithm)) {
            switch_update(switch_, out.collided != 0, out.attempted != 0);
        }
    }

    // cumulative metrics
    for (std::size_t j = 0; j < P_; ++j) {
        if (busy_[j]) {
            ++cum_.pu_d;
            ++busy_steps_;
            if (dec.busy[j]) ++busy_declared_busy_;
        } else {
            ++cum_.mis_d;
            ++idle_steps_;
            if (dec.busy[j]) {
                ++cum_.mis_n;
                ++idle_declared_busy_;
            }
        }
    }
    cum_.pu_n += pu_coll;
    cum_.su_n += su_coll;
    cum_.su_d += su_att;
    for (std::size_t i = 0; i < S_; ++i) {
        cum_.sense_total += static_cast<uint64_t>(sense_counts[i]);
        log_.per_su_sense[i] += static_cast<uint64_t>(sense_counts[i]);
    }
    cum_.step = n_;
    cum_.alive_frac = alive_now;
    cum_.mode = algo_uses_switch(cfg_.algorithm)
                    ? (switch_.mode == SwitchState::Mode::bh ? SwitchColumn::bh : SwitchColumn::plain)
                    : SwitchColumn::none;
    log_.records.push_back(cum_);

    // learner updates
    if (hedge_) {
        for (std::size_t j = 0; j < P_; ++j) {
            apply_[j] = cfg_.update_gating == UpdateGating::all_steps ? 1
                        : (dec.busy[j] ? 0 : 1);
        }
        if (loss_audit_) {
            for (std::size_t j = 0; j < P_; ++j) {
                if (!apply_[j]) continue;
                for (std::size_t i = 0; i < S_; ++i) {
                    std::size_t idx = j * S_ + i;
                    if (eff_[idx] && bits_[idx] != agt_[j]) ++loss_counts_[idx];
                }
            }
        }
        hedge_->update(bits_.data(), agt_.data(), eff_.data(), apply_.data());
    } else if (perc_) {
        for (std::size_t j = 0; j < P_; ++j) {
            const uint8_t* act = eff_.data() + j * S_;
            if (std::none_of(act, act + S_, [](uint8_t v) { return v != 0; })) continue;
            if (!dec.busy[j] && agt_[j]) {
                perc_->update(j, perc_obs_.data() + j * S_, act, 1, 0);
            }
        }
    }

    // deactivation over the effective mask, folded back into the pair mask
    if (cfg_.deactivation && hedge_) {
        std::vector<uint8_t> eff2(eff_);
        bool any_row = false;
        for (std::size_t j = 0; j < P_; ++j) {
            const uint8_t* act = eff_.data() + j * S_;
            if (std::any_of(act, act + S_, [](uint8_t v) { return v != 0; })) {
                normalize_weights(hedge_->weights().row(j), act, p_scratch_.data() + j * S_, S_);
                any_row = true;
            }
        }
        if (any_row) {
            deactivation_mask(p_scratch_.data(), P_, S_, cfg_.mu, eff2.data());
            for (std::size_t k = 0; k < P_ * S_; ++k) {
                if (eff_[k] && !eff2[k]) deact_[k] = 0;
            }
        }
    }

    energy_step(ledger_, sense_counts);
}

void Simulation::run() {
    while (n_ < cfg_.steps) step();
}

MetricsLog run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    sim.run();
    return sim.log();
}

std::vector<RocPoint> roc_sweep(const ScenarioConfig& cfg, const std::vector<double>& pfa_targets) {
    std::vector<std::future<RocPoint>> futures;
    futures.reserve(pfa_targets.size());
    for (double target : pfa_targets) {
        ScenarioConfig c = cfg;
        c.pfa = target;
        futures.push_back(std::async(std::launch::async, [c]() {
            Simulation sim(c);
            sim.run();
            RocPoint pt;
            pt.target_pfa = c.pfa;
            pt.emp_pfa = sim.idle_steps() ? static_cast<double>(sim.idle_declared_busy()) /
                                                static_cast<double>(sim.idle_steps())
                                          : 0.0;
            pt.emp_pd = sim.busy_steps() ? static_cast<double>(sim.busy_declared_busy()) /
                                               static_cast<double>(sim.busy_steps())
                                         : 0.0;
            return pt;
        }));
    }
    std::vector<RocPoint> out;
    out.reserve(futures.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

} // namespace css
