#include "css/engine.hpp"
#include "css/metrics.hpp"
#include "css/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Overrides {
    std::string config_path;
    std::string preset;
    std::string algo;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> steps;
};

css::ScenarioConfig build_config(const Overrides& ov) {
    nlohmann::json j = nlohmann::json::object();
    if (!ov.config_path.empty()) {
        std::ifstream in(ov.config_path);
        if (!in) throw css::ConfigError("cannot open config file: " + ov.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            j = nlohmann::json::parse(ss.str());
        } catch (const nlohmann::json::exception& e) {
            throw css::ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!j.is_object()) throw css::ConfigError("config must be an object");
    }
    if (!ov.preset.empty()) j["preset"] = ov.preset;
    if (!ov.algo.empty()) j["algorithm"] = ov.algo;
    if (ov.seed) j["seed"] = *ov.seed;
    if (ov.steps) j["steps"] = *ov.steps;
    return css::parse_config_text(j.dump());
}

void add_common(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "config file (JSON)");
    cmd->add_option("--preset", ov.preset, "gsc, msc, bsc or custom");
    cmd->add_option("--algo", ov.algo, "fusion algorithm");
    cmd->add_option("--seed", ov.seed, "RNG seed");
    cmd->add_option("--steps", ov.steps, "number of steps");
}

std::vector<css::PlotSeries> metric_series(const css::MetricsLog& log, int which) {
    css::PlotSeries s;
    s.y.reserve(log.records.size());
    for (const auto& r : log.records) {
        auto frac = [](uint64_t n, uint64_t d) { return d ? double(n) / double(d) : 0.0; };
        switch (which) {
        case 0: s.y.push_back(frac(r.pu_n, r.pu_d)); break;
        case 1: s.y.push_back(frac(r.su_n, r.su_d)); break;
        case 2: s.y.push_back(frac(r.mis_n, r.mis_d)); break;
        case 3: s.y.push_back(double(r.sense_total) / (double(log.S) * double(r.step))); break;
        default: s.y.push_back(r.alive_frac); break;
        }
    }
    return {s};
}

const char* metric_names[] = {"pu_collision", "su_collision", "missed", "sensing", "alive"};

void emit_plots(const css::MetricsLog& log, const std::string& out_path, const std::string& label) {
    for (int m = 0; m < 5; ++m) {
        auto series = metric_series(log, m);
        series[0].name = label;
        std::string path = out_path + "." + metric_names[m] + ".svg";
        if (!css::write_svg(path, std::string(metric_names[m]) + " vs step", series)) {
            std::cerr << "warning: plot emission failed for " << path << "\n";
        }
    }
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw css::ConfigError(std::string("bad ") + what + " entry: " + tok);
        }
    }
    if (out.empty()) throw css::ConfigError(std::string("empty ") + what + " list");
    return out;
}

int cmd_run(const Overrides& ov, const std::string& out, bool plot) {
    css::ScenarioConfig cfg = build_config(ov);
    css::MetricsLog log = css::run_scenario(cfg);
    if (out.empty()) {
        std::cout << css::csv_string(log);
    } else {
        css::emit_csv(log, out);
        if (plot) emit_plots(log, out, css::algorithm_name(cfg.algorithm));
    }
    return 0;
}

int cmd_roc(const Overrides& ov, const std::string& pfa_list, const std::string& out) {
    css::ScenarioConfig cfg = build_config(ov);
    if (!css::algo_is_hedge(cfg.algorithm) || css::algo_uses_bh(cfg.algorithm)) {
        throw css::ConfigError("roc requires hedge-hc, hedge-sc, dhedge-hc or dhedge-sc");
    }
    std::vector<double> targets = parse_double_list(pfa_list, "pfa");
    for (double t : targets) {
        if (!(t > 0.0 && t <= 1.0)) throw css::ConfigError("pfa targets must lie in (0,1]");
    }
    auto points = css::roc_sweep(cfg, targets);
    std::string text = "target_pfa,emp_pfa,emp_pd\n";
    char buf[128];
    for (const auto& pt : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pt.target_pfa, pt.emp_pfa, pt.emp_pd);
        text += buf;
    }
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f || !(f << text)) throw std::runtime_error("write failed: " + out);
    }
    return 0;
}

int cmd_compare(const Overrides& ov, const std::string& algos, const std::string& seeds_str,
                const std::string& out, bool plot) {
    std::vector<std::string> algo_names;
    {
        std::istringstream ss(algos);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) algo_names.push_back(tok);
        }
    }
    if (algo_names.empty()) throw css::ConfigError("compare needs at least one algorithm");
    std::vector<uint64_t> seeds;
    if (!seeds_str.empty()) {
        for (double v : parse_double_list(seeds_str, "seed")) seeds.push_back(static_cast<uint64_t>(v));
    } else {
        seeds.push_back(ov.seed.value_or(1));
    }

    struct Job {
        std::string algo;
        uint64_t seed;
        std::future<css::MetricsLog> fut;
    };
    std::vector<Job> jobs;
    for (const auto& name : algo_names) {
        for (uint64_t s : seeds) {
            Overrides o = ov;
            o.algo = name;
            o.seed = s;
            css::ScenarioConfig cfg = build_config(o); // validate before launching
            jobs.push_back({name, s, std::async(std::launch::async, [cfg]() {
                                return css::run_scenario(cfg);
                            })});
        }
    }

    std::string text = "algo,seed," + css::csv_header() + "\n";
    std::vector<std::pair<std::string, css::MetricsLog>> firsts;
    std::size_t ji = 0;
    std::vector<std::vector<css::MetricsLog>> by_algo(algo_names.size());
    for (std::size_t a = 0; a < algo_names.size(); ++a) {
        for (std::size_t s = 0; s < seeds.size(); ++s, ++ji) {
            css::MetricsLog log = jobs[ji].fut.get();
            for (const auto& r : log.records) {
                text += algo_names[a] + "," + std::to_string(seeds[s]) + "," + css::csv_row(r, log.S) + "\n";
            }
            if (s == 0) firsts.emplace_back(algo_names[a], log);
            if (seeds.size() > 1) by_algo[a].push_back(std::move(log));
        }
    }
    if (seeds.size() > 1) {
        char buf[32];
        for (std::size_t a = 0; a < algo_names.size(); ++a) {
            const auto& runs = by_algo[a];
            std::size_t n = runs[0].records.size();
            for (std::size_t k = 0; k < n; ++k) {
                double acc[5] = {0, 0, 0, 0, 0};
                for (const auto& log : runs) {
                    const auto& r = log.records[k];
                    auto frac = [](uint64_t x, uint64_t d) { return d ? double(x) / double(d) : 0.0; };
                    acc[0] += frac(r.pu_n, r.pu_d);
                    acc[1] += frac(r.su_n, r.su_d);
                    acc[2] += frac(r.mis_n, r.mis_d);
                    acc[3] += double(r.sense_total) / (double(log.S) * double(r.step));
                    acc[4] += r.alive_frac;
                }
                text += algo_names[a] + ",mean," + std::to_string(runs[0].records[k].step);
                for (double v : acc) {
                    std::snprintf(buf, sizeof buf, ",%.17g", v / double(runs.size()));
                    text += buf;
                }
                text += ",none\n";
            }
        }
    }

    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f || !(f << text)) throw std::runtime_error("write failed: " + out);
        if (plot) {
            for (int m = 0; m < 5; ++m) {
                std::vector<css::PlotSeries> series;
                for (auto& [name, log] : firsts) {
                    auto s = metric_series(log, m);
                    s[0].name = name;
                    series.push_back(std::move(s[0]));
                }
                std::string path = out + "." + metric_names[m] + ".svg";
                if (!css::write_svg(path, std::string(metric_names[m]) + " vs step", series)) {
                    std::cerr << "warning: plot emission failed for " << path << "\n";
                }
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collaborative spectrum sensing simulator"};
    app.require_subcommand(1);

    Overrides run_ov, roc_ov, cmp_ov;
    std::string run_out, roc_out, cmp_out;
    std::string pfa_list = "0.01,0.05,0.1,0.2";
    std::string algo_list, seed_list;
    bool run_plot = false, cmp_plot = false;

    CLI::App* run = app.add_subcommand("run", "run one scenario, emit per-step CSV");
    add_common(run, run_ov);
    run->add_option("--out", run_out, "output CSV path (stdout when omitted)");
    run->add_flag("--plot", run_plot, "emit per-metric SVG plots next to the CSV");

    CLI::App* roc = app.add_subcommand("roc", "empirical ROC sweep over pfa targets");
    add_common(roc, roc_ov);
    roc->add_option("--pfa-list", pfa_list, "comma-separated pfa targets");
    roc->add_option("--out", roc_out, "output CSV path (stdout when omitted)");

    CLI::App* cmp = app.add_subcommand("compare", "run several algorithms on a shared seed");
    add_common(cmp, cmp_ov);
    cmp->add_option("--algos", algo_list, "comma-separated algorithm list")->required();
    cmp->add_option("--seeds", seed_list, "comma-separated seed list (adds mean rows)");
    cmp->add_option("--out", cmp_out, "output CSV path (stdout when omitted)");
    cmp->add_flag("--plot", cmp_plot, "emit per-metric SVG plots next to the CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_ov, run_out, run_plot);
        if (roc->parsed()) return cmd_roc(roc_ov, pfa_list, roc_out);
        if (cmp->parsed()) return cmd_compare(cmp_ov, algo_list, seed_list, cmp_out, cmp_plot);
    } catch (const css::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
