#include "css/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace css {

double winner2_pathloss(double r_m, double fc_ghz) {
    if (r_m < 1.0) r_m = 1.0;
    return 20.0 * std::log10(r_m) + 46.4 + 20.0 * std::log10(fc_ghz / 5.0);
}

double link_gain(double pt_db, double pl_db) {
    return std::pow(10.0, (pt_db - pl_db) / 10.0);
}

void compute_gains(const Topology& topo, std::vector<double>& gains) {
    const std::size_t P = topo.pu_x.size(), S = topo.su_x.size();
    gains.resize(P * S);
    for (std::size_t j = 0; j < P; ++j) {
        for (std::size_t i = 0; i < S; ++i) {
            double dx = topo.pu_x[j] - topo.su_x[i];
            double dy = topo.pu_y[j] - topo.su_y[i];
            double r = std::sqrt(dx * dx + dy * dy);
            gains[j * S + i] = link_gain(topo.pu_tx_db, winner2_pathloss(r, topo.carrier_ghz));
        }
    }
}

int64_t sample_hed(const TrafficModel& model, Rng& rng) {
    double u = rng.uniform01();
    std::size_t k = 0;
    double acc = 0.0;
    for (; k < model.p.size(); ++k) {
        acc += model.p[k];
        if (u < acc) break;
    }
    if (k >= model.p.size()) k = model.p.size() - 1;
    double d = rng.exponential(model.lambda[k]);
    int64_t steps = static_cast<int64_t>(std::ceil(d));
    return steps < 1 ? 1 : steps;
}

void traffic_init(std::vector<TrafficState>& states, const std::vector<TrafficModel>& models, Rng& rng) {
    states.resize(models.size());
    for (std::size_t j = 0; j < models.size(); ++j) {
        states[j].on = rng.uniform01() < 0.5 ? 1 : 0;
        states[j].remaining = sample_hed(models[j], rng);
    }
}

void traffic_step(std::vector<TrafficState>& states, const std::vector<TrafficModel>& models,
                  Rng& rng, uint8_t* busy) {
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (--states[j].remaining <= 0) {
            states[j].on = states[j].on ? 0 : 1;
            states[j].remaining = sample_hed(models[j], rng);
        }
        busy[j] = states[j].on;
    }
}

void mobility_init(MobilityState& st, std::size_t P, std::size_t S, Rng& rng) {
    st.pu_heading.resize(P);
    st.su_heading.resize(S);
    for (double& h : st.pu_heading) h = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (double& h : st.su_heading) h = rng.uniform(0.0, 2.0 * std::numbers::pi);
}

static void advance(double& x, double& y, double& heading, double dist, double side, Rng& rng) {
    x += dist * std::cos(heading);
    y += dist * std::sin(heading);
    bool reflected = false;
    if (x < 0.0) {
        x = -x;
        reflected = true;
    } else if (x > side) {
        x = 2.0 * side - x;
        reflected = true;
    }
    if (y < 0.0) {
        y = -y;
        reflected = true;
    } else if (y > side) {
        y = 2.0 * side - y;
        reflected = true;
    }
    if (reflected) heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
}

void move_nodes(Topology& topo, const MobilityModel& model, MobilityState& st, Rng& rng) {
    double dist = model.speed * model.step_duration;
    if (dist == 0.0) return;
    if (model.pu_mobile) {
        for (std::size_t j = 0; j < topo.pu_x.size(); ++j) {
            advance(topo.pu_x[j], topo.pu_y[j], st.pu_heading[j], dist, topo.area_side, rng);
        }
    }
    if (model.su_mobile) {
        for (std::size_t i = 0; i < topo.su_x.size(); ++i) {
            advance(topo.su_x[i], topo.su_y[i], st.su_heading[i], dist, topo.area_side, rng);
        }
    }
}

ProbeOutcome observe_agt(int decision_busy, int truth_busy, double packet_loss,
                         const std::vector<uint8_t>& alive, std::size_t& rr, Rng& rng,
                         uint8_t& agt) {
    ProbeOutcome out;
    if (decision_busy) {
        agt = 1;
        return out;
    }
    std::size_t n = alive.size();
    bool anyone = false;
    for (uint8_t a : alive) {
        if (a) {
            anyone = true;
            break;
        }
    }
    if (!anyone) {
        agt = 1;
        return out;
    }
    while (!alive[rr % n]) ++rr;
    ++rr;
    out.attempted = 1;
    if (truth_busy) {
        out.collided = 1;
        agt = 1;
    } else if (rng.uniform01() < packet_loss) {
        out.lost = 1;
        agt = 1;
    } else {
        agt = 0;
    }
    return out;
}

} // namespace css
