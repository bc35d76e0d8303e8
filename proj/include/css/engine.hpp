#pragma once

#include "css/core.hpp"
#include "css/detector.hpp"
#include "css/energy.hpp"
#include "css/fdr.hpp"
#include "css/hedge.hpp"
#include "css/metrics.hpp"
#include "css/perceptron.hpp"
#include "css/scenario.hpp"
#include "css/simulator.hpp"

#include <memory>
#include <optional>

namespace css {

// One scenario run. Per-component random sub-streams keep trajectories
// deterministic for a (config, seed) pair regardless of the active mask.
class Simulation {
public:
    explicit Simulation(const ScenarioConfig& cfg);

    // Fixed P x S link gains in place of topology-derived ones (synthetic runs).
    void set_gain_override(std::vector<double> gains);
    // Track per-pair applied-loss counts for the hedge closed-form audit.
    void enable_loss_audit();

    void step();
    void run();

    const ScenarioConfig& config() const { return cfg_; }
    const MetricsLog& log() const { return log_; }
    const Topology& topology() const { return topo_; }
    const std::vector<double>& gains() const { return gains_; }
    const std::vector<uint8_t>& pair_active() const { return deact_; }
    const EnergyLedger& ledger() const { return ledger_; }
    const SwitchState& switch_state() const { return switch_; }
    const HedgeBank* hedge() const { return hedge_.get(); }
    const PerceptronBank* perceptron() const { return perc_.get(); }
    const std::vector<uint32_t>& loss_counts() const { return loss_counts_; }
    uint64_t current_step() const { return n_; }

    // FC-level confusion counters against true channel states.
    uint64_t busy_steps() const { return busy_steps_; }
    uint64_t busy_declared_busy() const { return busy_declared_busy_; }
    uint64_t idle_steps() const { return idle_steps_; }
    uint64_t idle_declared_busy() const { return idle_declared_busy_; }

private:
    void fuse(DecisionVector& dec);

    ScenarioConfig cfg_;
    std::size_t P_, S_;
    EnergyDetectorConfig det_;
    double zeta_ = 0.0;

    Rng traffic_rng_, mobility_rng_, sense_rng_, probe_rng_;
    Topology topo_;
    MobilityModel mob_model_;
    MobilityState mob_state_;
    std::vector<TrafficModel> traffic_models_;
    std::vector<TrafficState> traffic_states_;
    std::vector<double> gains_;
    bool gain_override_ = false;

    std::unique_ptr<HedgeBank> hedge_;
    std::unique_ptr<PerceptronBank> perc_;
    EnergyLedger ledger_;
    SwitchState switch_;
    std::vector<uint8_t> deact_; // P x S, deactivation mask (1 = sensing)
    std::size_t rr_ = 0;

    ObservationMatrix obs_;          // energies (soft) or bits (hard)
    std::vector<double> energies_;   // raw energies
    std::vector<double> perc_obs_;   // energies / sigma^2
    std::vector<uint8_t> bits_;      // expert hard decisions
    std::vector<uint8_t> eff_;       // deact & alive
    std::vector<uint8_t> busy_;      // true channel states
    std::vector<uint8_t> agt_;
    std::vector<uint8_t> apply_;     // hedge update gate per channel
    std::vector<double> p_scratch_;

    MetricsLog log_;
    StepRecord cum_;
    uint64_t n_ = 0;
    uint64_t busy_steps_ = 0, busy_declared_busy_ = 0;
    uint64_t idle_steps_ = 0, idle_declared_busy_ = 0;

    bool loss_audit_ = false;
    std::vector<uint32_t> loss_counts_;
};

MetricsLog run_scenario(const ScenarioConfig& cfg);

struct RocPoint {
    double target_pfa = 0.0;
    double emp_pfa = 0.0;
    double emp_pd = 0.0;
};

// Reruns the scenario once per target; runs execute in parallel.
std::vector<RocPoint> roc_sweep(const ScenarioConfig& cfg, const std::vector<double>& pfa_targets);

} // namespace css
