#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace css {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Preset { gsc, msc, bsc, custom };

enum class Algorithm {
    hedge_hc,
    hedge_sc,
    perc_sc,
    hsc_bh,
    psc_bh,
    hsc_sw,
    psc_sw,
    dhedge_hc,
    dhedge_sc,
    dperc_sc,
    or_rule,
    and_rule,
    majority_rule,
};

enum class UpdateGating { all_steps, idle_only };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& s);
const char* preset_name(Preset p);
Preset parse_preset(const std::string& s);

bool algo_is_soft(Algorithm a);
bool algo_is_hedge(Algorithm a);
bool algo_is_perceptron(Algorithm a);
bool algo_is_baseline(Algorithm a);
bool algo_uses_bh(Algorithm a);
bool algo_uses_switch(Algorithm a);

// Negative beta/rho/discount/mu mean "resolve per-algorithm default in finalize".
struct ScenarioConfig {
    Preset preset = Preset::custom;
    Algorithm algorithm = Algorithm::hedge_hc;
    std::size_t channels = 10; // P
    std::size_t sus = 10;      // S
    double area_side = 1000.0;
    double carrier_ghz = 6.0;
    double pu_tx_db = 0.0;
    double pfa = 0.05;
    double packet_loss = 0.05;
    int hed_components = 3;
    double lambda_min = 0.01;
    double lambda_max = 500.0;
    double beta = -1.0;
    double rho = -1.0;
    double discount = -1.0;
    double tau = 0.02;
    double mu = -1.0;
    double w0 = 1.0;
    int num_samples = 10;
    double noise_variance = 1.0;
    int64_t budget = 0; // 0 = unconstrained
    int64_t cost_per_sense = 1;
    bool deactivation = false;
    bool pu_mobile = false;
    bool su_mobile = false;
    double speed = 5.0;
    double step_duration = 1.0;
    uint64_t steps = 10000;
    uint64_t seed = 1;
    UpdateGating update_gating = UpdateGating::all_steps;
    bool switch_latch = false;
    std::size_t mc_samples = 10000;
};

ScenarioConfig make_preset(Preset p, Algorithm a);

// Resolves per-algorithm defaults and validates every range; throws ConfigError.
void finalize_config(ScenarioConfig& cfg);

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

} // namespace css
