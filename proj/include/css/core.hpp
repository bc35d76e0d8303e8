#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace css {

enum class CombiningMode { hard, soft };

// Dense P x S row-major matrices; a channel's row is contiguous.
struct ObservationMatrix {
    std::size_t P = 0, S = 0;
    CombiningMode mode = CombiningMode::hard;
    std::vector<double> values;
    std::vector<uint8_t> active;

    ObservationMatrix() = default;
    ObservationMatrix(std::size_t p, std::size_t s, CombiningMode m)
        : P(p), S(s), mode(m), values(p * s, 0.0), active(p * s, 1) {}

    double* row(std::size_t j) { return values.data() + j * S; }
    const double* row(std::size_t j) const { return values.data() + j * S; }
    uint8_t* active_row(std::size_t j) { return active.data() + j * S; }
    const uint8_t* active_row(std::size_t j) const { return active.data() + j * S; }
};

struct WeightMatrix {
    std::size_t P = 0, S = 0;
    std::vector<double> weights;
    std::vector<double> normalized;

    WeightMatrix() = default;
    WeightMatrix(std::size_t p, std::size_t s, double w0)
        : P(p), S(s), weights(p * s, w0), normalized(p * s, 0.0) {}

    double* row(std::size_t j) { return weights.data() + j * S; }
    const double* row(std::size_t j) const { return weights.data() + j * S; }
    double* norm_row(std::size_t j) { return normalized.data() + j * S; }
    const double* norm_row(std::size_t j) const { return normalized.data() + j * S; }
};

struct ChannelTruth {
    std::vector<uint8_t> true_state; // g_j
    std::vector<uint8_t> agt;        // busy unless an idle-decision probe saw idle
    std::vector<uint8_t> probed;     // a transmission probe happened this step
};

struct DecisionVector {
    std::vector<double> soft;       // f~_j
    std::vector<double> thresholds; // gamma_j or gamma_j^p
    std::vector<uint8_t> busy;      // f_j
};

struct LearnerParams {
    double beta = 0.88;
    double rho = 0.80;
    double discount = 1.0;
    double w0 = 1.0;
    double pfa_target = 0.05;
    double alpha_fdr = 0.05;
    double tau_switch = 0.02;
    double mu_deactivate = 0.0;
};

// out[i] = w[i] / sum of active w; inactive entries 0. Throws if no active entry.
void normalize_weights(const double* w, const uint8_t* active, double* out, std::size_t S);

inline int expert_loss(int decision, int truth) { return decision == truth ? 0 : 1; }

} // namespace css
