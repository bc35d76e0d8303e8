#include "css/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace css {

namespace {

struct AlgoName {
    Algorithm a;
    const char* name;
};

constexpr AlgoName algo_names[] = {
    {Algorithm::hedge_hc, "hedge-hc"},   {Algorithm::hedge_sc, "hedge-sc"},
    {Algorithm::perc_sc, "perc-sc"},     {Algorithm::hsc_bh, "hsc-bh"},
    {Algorithm::psc_bh, "psc-bh"},       {Algorithm::hsc_sw, "hsc-sw"},
    {Algorithm::psc_sw, "psc-sw"},       {Algorithm::dhedge_hc, "dhedge-hc"},
    {Algorithm::dhedge_sc, "dhedge-sc"}, {Algorithm::dperc_sc, "dperc-sc"},
    {Algorithm::or_rule, "or"},          {Algorithm::and_rule, "and"},
    {Algorithm::majority_rule, "majority"},
};

} // namespace

const char* algorithm_name(Algorithm a) {
    for (const auto& e : algo_names) {
        if (e.a == a) return e.name;
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& s) {
    for (const auto& e : algo_names) {
        if (s == e.name) return e.a;
    }
    throw ConfigError("unknown algorithm: " + s);
}

const char* preset_name(Preset p) {
    switch (p) {
    case Preset::gsc: return "gsc";
    case Preset::msc: return "msc";
    case Preset::bsc: return "bsc";
    default: return "custom";
    }
}

Preset parse_preset(const std::string& s) {
    if (s == "gsc") return Preset::gsc;
    if (s == "msc") return Preset::msc;
    if (s == "bsc") return Preset::bsc;
    if (s == "custom") return Preset::custom;
    throw ConfigError("unknown preset: " + s);
}

bool algo_is_soft(Algorithm a) {
    switch (a) {
    case Algorithm::hedge_sc:
    case Algorithm::perc_sc:
    case Algorithm::hsc_bh:
    case Algorithm::psc_bh:
    case Algorithm::hsc_sw:
    case Algorithm::psc_sw:
    case Algorithm::dhedge_sc:
    case Algorithm::dperc_sc: return true;
    default: return false;
    }
}

bool algo_is_hedge(Algorithm a) {
    switch (a) {
    case Algorithm::hedge_hc:
    case Algorithm::hedge_sc:
    case Algorithm::hsc_bh:
    case Algorithm::hsc_sw:
    case Algorithm::dhedge_hc:
    case Algorithm::dhedge_sc: return true;
    default: return false;
    }
}

bool algo_is_perceptron(Algorithm a) {
    switch (a) {
    case Algorithm::perc_sc:
    case Algorithm::psc_bh:
    case Algorithm::psc_sw:
    case Algorithm::dperc_sc: return true;
    default: return false;
    }
}

bool algo_is_baseline(Algorithm a) {
    switch (a) {
    case Algorithm::or_rule:
    case Algorithm::and_rule:
    case Algorithm::majority_rule: return true;
    default: return false;
    }
}

bool algo_uses_bh(Algorithm a) {
    switch (a) {
    case Algorithm::hsc_bh:
    case Algorithm::psc_bh:
    case Algorithm::hsc_sw:
    case Algorithm::psc_sw: return true;
    default: return false;
    }
}

bool algo_uses_switch(Algorithm a) {
    return a == Algorithm::hsc_sw || a == Algorithm::psc_sw;
}

ScenarioConfig make_preset(Preset p, Algorithm a) {
    ScenarioConfig cfg;
    cfg.preset = p;
    cfg.algorithm = a;
    cfg.channels = 10;
    cfg.pfa = 0.05;
    cfg.packet_loss = 0.05;
    cfg.hed_components = 3;
    cfg.num_samples = 10;
    cfg.noise_variance = std::pow(10.0, -115.0 / 10.0);
    switch (p) {
    case Preset::gsc:
        cfg.area_side = 1000.0;
        cfg.sus = 10;
        break;
    case Preset::msc:
        cfg.area_side = 8000.0;
        cfg.sus = 50;
        break;
    case Preset::bsc:
        cfg.area_side = 8000.0;
        cfg.sus = 10;
        break;
    case Preset::custom: break;
    }
    return cfg;
}

void finalize_config(ScenarioConfig& cfg) {
    Algorithm a = cfg.algorithm;
    if (cfg.beta < 0.0) {
        if (a == Algorithm::dhedge_hc) cfg.beta = 0.05;
        else if (a == Algorithm::dhedge_sc) cfg.beta = 0.50;
        else if (algo_is_soft(a)) cfg.beta = 0.99;
        else cfg.beta = 0.88;
    }
    if (cfg.rho < 0.0) cfg.rho = a == Algorithm::dperc_sc ? 0.40 : 0.80;
    if (cfg.discount < 0.0) {
        if (a == Algorithm::dhedge_hc) cfg.discount = 0.80;
        else if (a == Algorithm::dhedge_sc) cfg.discount = 0.60;
        else if (a == Algorithm::dperc_sc) cfg.discount = 0.99;
        else cfg.discount = 1.0;
    }
    if (cfg.mu < 0.0) cfg.mu = 1.0 / (2.0 * static_cast<double>(cfg.sus));

    if (cfg.channels < 1) throw ConfigError("channels must be >= 1");
    if (cfg.sus < 1) throw ConfigError("sus must be >= 1");
    if (!(cfg.area_side > 0.0)) throw ConfigError("area_side must be positive");
    if (!(cfg.carrier_ghz > 0.0)) throw ConfigError("carrier_ghz must be positive");
    if (!(cfg.pfa > 0.0 && cfg.pfa <= 1.0)) throw ConfigError("pfa must lie in (0,1]");
    if (!(cfg.packet_loss >= 0.0 && cfg.packet_loss < 1.0)) throw ConfigError("packet_loss must lie in [0,1)");
    if (cfg.hed_components < 1) throw ConfigError("hed_components must be >= 1");
    if (!(cfg.lambda_min > 0.0 && cfg.lambda_min <= cfg.lambda_max && cfg.lambda_max <= 500.0)) {
        throw ConfigError("lambda range must satisfy 0 < min <= max <= 500");
    }
    if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("beta must lie in (0,1]");
    if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) throw ConfigError("rho must lie in (0,1]");
    if (!(cfg.discount >= 0.0 && cfg.discount <= 1.0)) throw ConfigError("discount must lie in [0,1]");
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) throw ConfigError("tau must lie in (0,1)");
    if (!(cfg.mu >= 0.0 && cfg.mu < 1.0)) throw ConfigError("mu must lie in [0,1)");
    if (!(cfg.w0 > 0.0)) throw ConfigError("w0 must be positive");
    if (cfg.num_samples < 1) throw ConfigError("num_samples must be >= 1");
    if (!(cfg.noise_variance > 0.0)) throw ConfigError("noise_variance must be positive");
    if (cfg.budget < 0) throw ConfigError("budget must be >= 0");
    if (cfg.cost_per_sense < 1) throw ConfigError("cost_per_sense must be >= 1");
    if (!(cfg.speed >= 0.0)) throw ConfigError("speed must be >= 0");
    if (!(cfg.step_duration > 0.0)) throw ConfigError("step_duration must be positive");
    if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
    if (cfg.mc_samples < 1000) throw ConfigError("mc_samples must be >= 1000");
    if (cfg.deactivation && !algo_is_hedge(a)) {
        throw ConfigError("deactivation requires a hedge algorithm");
    }
    if (algo_uses_bh(a) && !algo_is_soft(a)) {
        throw ConfigError("BH selection requires soft combining");
    }
}

namespace {

const std::set<std::string> known_keys = {
    "preset",       "algorithm",     "seed",        "steps",        "channels",
    "sus",          "area_side",     "carrier_ghz", "pu_tx_db",     "pfa",
    "packet_loss",  "hed_components", "lambda_min", "lambda_max",   "beta",
    "rho",          "discount",      "tau",         "mu",           "w0",
    "num_samples",  "noise_variance", "budget",     "cost_per_sense", "deactivation",
    "pu_mobile",    "su_mobile",     "speed",       "step_duration", "update_gating",
    "switch_latch", "mc_samples",
};

template <typename T>
T get_num(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return j.at(key).get<T>();
}

bool get_bool(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

std::string get_str(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be an object");
    for (const auto& item : j.items()) {
        if (!known_keys.count(item.key())) throw ConfigError("unknown config key: " + item.key());
    }

    Preset preset = j.contains("preset") ? parse_preset(get_str(j, "preset")) : Preset::custom;
    Algorithm algo = j.contains("algorithm") ? parse_algorithm(get_str(j, "algorithm")) : Algorithm::hedge_hc;
    ScenarioConfig cfg = preset == Preset::custom ? ScenarioConfig{} : make_preset(preset, algo);
    cfg.preset = preset;
    cfg.algorithm = algo;

    if (j.contains("seed")) cfg.seed = get_num<uint64_t>(j, "seed");
    if (j.contains("steps")) cfg.steps = get_num<uint64_t>(j, "steps");
    if (j.contains("channels")) cfg.channels = get_num<std::size_t>(j, "channels");
    if (j.contains("sus")) cfg.sus = get_num<std::size_t>(j, "sus");
    if (j.contains("area_side")) cfg.area_side = get_num<double>(j, "area_side");
    if (j.contains("carrier_ghz")) cfg.carrier_ghz = get_num<double>(j, "carrier_ghz");
    if (j.contains("pu_tx_db")) cfg.pu_tx_db = get_num<double>(j, "pu_tx_db");
    if (j.contains("pfa")) cfg.pfa = get_num<double>(j, "pfa");
    if (j.contains("packet_loss")) cfg.packet_loss = get_num<double>(j, "packet_loss");
    if (j.contains("hed_components")) cfg.hed_components = get_num<int>(j, "hed_components");
    if (j.contains("lambda_min")) cfg.lambda_min = get_num<double>(j, "lambda_min");
    if (j.contains("lambda_max")) cfg.lambda_max = get_num<double>(j, "lambda_max");
    if (j.contains("beta")) cfg.beta = get_num<double>(j, "beta");
    if (j.contains("rho")) cfg.rho = get_num<double>(j, "rho");
    if (j.contains("discount")) cfg.discount = get_num<double>(j, "discount");
    if (j.contains("tau")) cfg.tau = get_num<double>(j, "tau");
    if (j.contains("mu")) cfg.mu = get_num<double>(j, "mu");
    if (j.contains("w0")) cfg.w0 = get_num<double>(j, "w0");
    if (j.contains("num_samples")) cfg.num_samples = get_num<int>(j, "num_samples");
    if (j.contains("noise_variance")) cfg.noise_variance = get_num<double>(j, "noise_variance");
    if (j.contains("budget")) cfg.budget = get_num<int64_t>(j, "budget");
    if (j.contains("cost_per_sense")) cfg.cost_per_sense = get_num<int64_t>(j, "cost_per_sense");
    if (j.contains("deactivation")) cfg.deactivation = get_bool(j, "deactivation");
    if (j.contains("pu_mobile")) cfg.pu_mobile = get_bool(j, "pu_mobile");
    if (j.contains("su_mobile")) cfg.su_mobile = get_bool(j, "su_mobile");
    if (j.contains("speed")) cfg.speed = get_num<double>(j, "speed");
    if (j.contains("step_duration")) cfg.step_duration = get_num<double>(j, "step_duration");
    if (j.contains("update_gating")) {
        std::string g = get_str(j, "update_gating");
        if (g == "all") cfg.update_gating = UpdateGating::all_steps;
        else if (g == "idle-only") cfg.update_gating = UpdateGating::idle_only;
        else throw ConfigError("update_gating must be 'all' or 'idle-only'");
    }
    if (j.contains("switch_latch")) cfg.switch_latch = get_bool(j, "switch_latch");
    if (j.contains("mc_samples")) cfg.mc_samples = get_num<std::size_t>(j, "mc_samples");

    finalize_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace css
