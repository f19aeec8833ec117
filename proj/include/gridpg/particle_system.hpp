#pragma once

#include <cstdint>
#include <vector>

#include "gridpg/ssm.hpp"
#include "gridpg/weights.hpp"

namespace gridpg {

// Weighted trajectory ensemble in ancestry-index form.
//
// Points and ancestor indices are stored per step; full trajectories are
// reconstructed lazily by walking the index arrays backward, so resampling
// never copies path prefixes. ancestry[t][m] is the time-(t-1) slot extended
// by particle m at time t; ancestry[0] is identity by convention.
struct ParticleSystem {
    int particle_count = 0;
    int step_count = 0;

    std::vector<std::vector<StatePoint>> points;   // T x M
    std::vector<std::vector<int>> ancestry;        // T x M
    std::vector<std::vector<int>> cells;           // T x M joint grid cells, -1 without a grid
    std::vector<std::vector<double>> step_weights; // T x M normalized weights after step t
    WeightLedger ledger;                           // cumulative weights at the final step

    std::vector<double> step_ess;                  // ESS after weighting each step
    std::vector<std::uint8_t> step_resampled;      // resampling decision entering step t
    std::vector<std::uint8_t> ancestor_switched;   // reference ancestor moved (CSMC-AS only)
    long ancestor_fallbacks = 0;                   // all-zero ancestor weights, reference retained

    void start(int particles, int steps);
    StatePath trajectory(int m) const;
};

}  // namespace gridpg
