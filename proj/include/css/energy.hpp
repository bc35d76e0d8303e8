#pragma once

#include <cstdint>
#include <vector>

namespace css {

// budget <= 0 at construction means unconstrained (always alive).
struct EnergyLedger {
    std::vector<int64_t> budget;
    int64_t cost_per_sense = 1;
    std::vector<uint8_t> alive;
    bool limited = true;

    EnergyLedger() = default;
    EnergyLedger(std::size_t S, int64_t initial_budget, int64_t cost);
};

// Decrements budget by cost * count, floors at 0, refreshes alive.
void energy_step(EnergyLedger& ledger, const std::vector<int>& sense_counts);

double alive_fraction(const EnergyLedger& ledger);

// Deactivates active pairs with p < mu; the row's highest-p active detector is
// always kept. Deactivation is permanent (mask only loses entries).
void deactivation_mask(const double* p_matrix, std::size_t P, std::size_t S, double mu,
                       uint8_t* active);

} // namespace css
