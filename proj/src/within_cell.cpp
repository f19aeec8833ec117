#include "gridpg/within_cell.hpp"

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/numeric.hpp"

namespace gridpg {

WithinCellSampler::WithinCellSampler(const Grid* grid, double outer_variance)
    : grid_(grid), outer_var_(outer_variance), outer_sd_(std::sqrt(outer_variance)) {
    if (!(outer_variance > 0.0))
        throw ConfigError("within-cell sampler: outer variance must be positive");
    // Truncation masses; the mean sits half a width outside the boundary, so
    // both are comfortably away from 0.
    left_log_mass_ = std::log(normal_cdf((grid_->lo - grid_->midpoints[0]) / outer_sd_));
    right_log_mass_ = std::log(
        normal_cdf((grid_->midpoints[grid_->cell_count - 1] - grid_->hi) / outer_sd_));
}

double WithinCellSampler::sample(int cell, RandomSource& rng) const {
    const int last = grid_->cell_count - 1;
    if (cell == 0) {
        double x = draw_truncated_normal_below(rng, grid_->midpoints[0], outer_sd_, grid_->lo);
        // Keep the draw inside the half-open cell under rounding.
        if (x >= grid_->lo) x = std::nextafter(grid_->lo, grid_->midpoints[0]);
        return x;
    }
    if (cell == last) {
        double x = draw_truncated_normal_above(rng, grid_->midpoints[last], outer_sd_, grid_->hi);
        if (x < grid_->hi) x = grid_->hi;
        return x;
    }
    const double e = grid_->lower_edge(cell);
    double x = e + rng.uniform() * grid_->finite_width;
    const double next = grid_->upper_edge(cell);
    if (x >= next) x = std::nextafter(next, e);
    return x;
}

double WithinCellSampler::log_density(int cell, double x) const {
    const int last = grid_->cell_count - 1;
    if (cell == 0) {
        if (!(x < grid_->lo)) return kNegInf;
        return normal_logpdf(x, grid_->midpoints[0], outer_var_) - left_log_mass_;
    }
    if (cell == last) {
        if (!(x >= grid_->hi)) return kNegInf;
        return normal_logpdf(x, grid_->midpoints[last], outer_var_) - right_log_mass_;
    }
    if (x < grid_->lower_edge(cell) || x >= grid_->upper_edge(cell)) return kNegInf;
    return -std::log(grid_->finite_width);
}

}  // namespace gridpg
