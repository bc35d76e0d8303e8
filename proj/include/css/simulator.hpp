#pragma once

#include "css/rng.hpp"

#include <cstdint>
#include <vector>

namespace css {

struct Topology {
    std::vector<double> pu_x, pu_y;
    std::vector<double> su_x, su_y;
    double area_side = 0.0;
    double carrier_ghz = 6.0;
    double pu_tx_db = 0.0;
};

// PL = 20 log10(r) + 46.4 + 20 log10(fc/5); r in meters (clamped to >= 1), fc in GHz.
double winner2_pathloss(double r_m, double fc_ghz);

// sigma_s^2 = 10^((PT - PL)/10)
double link_gain(double pt_db, double pl_db);

// P x S gains, row j holds channel j's gain at every SU.
void compute_gains(const Topology& topo, std::vector<double>& gains);

struct TrafficModel {
    std::vector<double> p;      // component weights, sum 1
    std::vector<double> lambda; // per-step rates
};

struct TrafficState {
    uint8_t on = 0;
    int64_t remaining = 0;
};

// Hyper-exponential duration in whole steps, minimum 1.
int64_t sample_hed(const TrafficModel& model, Rng& rng);

void traffic_init(std::vector<TrafficState>& states, const std::vector<TrafficModel>& models, Rng& rng);

// Decrement, flip phase on expiry with a fresh duration; writes busy flags.
void traffic_step(std::vector<TrafficState>& states, const std::vector<TrafficModel>& models,
                  Rng& rng, uint8_t* busy);

struct MobilityModel {
    bool pu_mobile = false;
    bool su_mobile = false;
    double speed = 5.0;         // m/s
    double step_duration = 1.0; // s
};

struct MobilityState {
    std::vector<double> pu_heading;
    std::vector<double> su_heading;
};

void mobility_init(MobilityState& st, std::size_t P, std::size_t S, Rng& rng);

// Persistent headings, boundary reflection with a fresh heading after reflecting.
void move_nodes(Topology& topo, const MobilityModel& model, MobilityState& st, Rng& rng);

struct ProbeOutcome {
    uint8_t attempted = 0;
    uint8_t collided = 0; // truth was busy
    uint8_t lost = 0;     // packet loss on a truly idle channel
};

// Fills agt for one channel given the FC decision; round-robin transmitter
// among alive SUs advances rr. decision busy -> agt busy, no probe.
ProbeOutcome observe_agt(int decision_busy, int truth_busy, double packet_loss,
                         const std::vector<uint8_t>& alive, std::size_t& rr, Rng& rng,
                         uint8_t& agt);

} // namespace css
