#pragma once

#include "gridpg/grid.hpp"
#include "gridpg/random.hpp"

namespace gridpg {

// Per-cell continuous samplers: uniform over finite cells, truncated
// Gaussian over the two outer cells with mean at the outer midpoint.
// Densities are strictly positive exactly on the owning cell.
class WithinCellSampler {
public:
    WithinCellSampler() = default;
    WithinCellSampler(const Grid* grid, double outer_variance);

    double sample(int cell, RandomSource& rng) const;
    double log_density(int cell, double x) const;

    double outer_variance() const { return outer_var_; }

private:
    const Grid* grid_ = nullptr;
    double outer_var_ = 1.0;
    double outer_sd_ = 1.0;
    double left_log_mass_ = 0.0;   // log P(X < lo) under the left outer Gaussian
    double right_log_mass_ = 0.0;  // log P(X >= hi) under the right outer Gaussian
};

}  // namespace gridpg
