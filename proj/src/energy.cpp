#include "css/energy.hpp"

#include <stdexcept>

namespace css {

EnergyLedger::EnergyLedger(std::size_t S, int64_t initial_budget, int64_t cost)
    : budget(S, initial_budget > 0 ? initial_budget : 0), cost_per_sense(cost),
      alive(S, 1), limited(initial_budget > 0) {
    if (cost < 1) throw std::invalid_argument("energy: cost per sense must be >= 1");
}

void energy_step(EnergyLedger& ledger, const std::vector<int>& sense_counts) {
    if (!ledger.limited) return;
    if (sense_counts.size() != ledger.budget.size()) throw std::invalid_argument("energy: sense count size mismatch");
    for (std::size_t i = 0; i < ledger.budget.size(); ++i) {
        int64_t spent = ledger.cost_per_sense * sense_counts[i];
        ledger.budget[i] = ledger.budget[i] > spent ? ledger.budget[i] - spent : 0;
        ledger.alive[i] = ledger.budget[i] > 0 ? 1 : 0;
    }
}

double alive_fraction(const EnergyLedger& ledger) {
    if (ledger.alive.empty()) return 0.0;
    std::size_t n = 0;
    for (uint8_t a : ledger.alive) n += a;
    return static_cast<double>(n) / static_cast<double>(ledger.alive.size());
}

void deactivation_mask(const double* p_matrix, std::size_t P, std::size_t S, double mu,
                       uint8_t* active) {
    for (std::size_t j = 0; j < P; ++j) {
        const double* p = p_matrix + j * S;
        uint8_t* act = active + j * S;
        std::size_t best = S;
        for (std::size_t i = 0; i < S; ++i) {
            if (act[i] && (best == S || p[i] > p[best])) best = i;
        }
        if (best == S) continue;
        for (std::size_t i = 0; i < S; ++i) {
            if (act[i] && i != best && p[i] < mu) act[i] = 0;
        }
    }
}

} // namespace css
