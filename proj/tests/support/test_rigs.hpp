#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gridpg/grid.hpp"
#include "gridpg/models/discrete_hmm.hpp"
#include "gridpg/models/linear_gaussian.hpp"
#include "gridpg/ssm.hpp"

namespace gridpg::testing {

// Random source that systematically explores every discrete branch of a
// deterministic computation. Each categorical draw is a branch point; the
// trace is advanced like an odometer between runs. uniform() returns the
// canonical 0.5, so it must only be consumed by draws whose value does not
// affect the quantity being enumerated.
class EnumerationRng final : public RandomSource {
public:
    double uniform() override { return 0.5; }
    int categorical_from_cdf(std::span<const double> cdf) override;

    void begin_run();
    bool advance();  // next branch; false when the whole tree is explored
    double run_probability() const { return probability_; }

private:
    struct ChoicePoint {
        std::vector<int> option;        // selectable indices (positive mass)
        std::vector<double> probability;
    };
    std::vector<int> trace_;
    std::vector<ChoicePoint> options_;
    size_t pos_ = 0;
    double probability_ = 1.0;
};

// Enumerates fn over every branch; fn maps one complete run to an integer
// outcome. Returns outcome -> total probability.
std::map<int, double> enumerate_outcomes(const std::function<int(RandomSource&)>& fn);

// Regime-switching test model whose densities are piecewise constant over
// the finite cells of a grid: the joint (regime, finite-cell) index follows
// a given discrete HMM, the value is uniform within its cell, and
// observations are Gaussian per joint state. The midpoint HMM approximation
// is exact for this model, which makes grid-proposal sweeps exactly
// enumerable at the cell level.
class PiecewiseConstantModel final : public SsmModel {
public:
    // hmm.state_count must equal regimes * (grid.cell_count - 2); joint
    // states are ordered (regime - 1) * finite_cells + (finite cell - 1).
    PiecewiseConstantModel(Grid grid, int regimes, DiscreteHmmSpec hmm);

    int regime_count() const override { return regimes_; }
    void validate(const ModelParameters&) const override {}

    double initial_log_density(const StatePoint& x1, const ModelParameters&) const override;
    double transition_log_density(const StatePoint& x, const StatePoint& prev,
                                  const ModelParameters&) const override;
    double observation_log_density(double y, const StatePoint& x,
                                   const ModelParameters&) const override;

    StatePoint simulate_initial(const ModelParameters&, RandomSource& rng) const override;
    StatePoint simulate_transition(const StatePoint& prev, const ModelParameters&,
                                   RandomSource& rng) const override;
    double simulate_observation(const StatePoint& x, const ModelParameters&,
                                RandomSource& rng) const override;

    const Grid& grid() const { return grid_; }
    const DiscreteHmmSpec& hmm() const { return hmm_; }
    int finite_cells() const { return grid_.cell_count - 2; }

    // Joint state of a point, or -1 when the value lies in an outer cell.
    int joint_state(const StatePoint& p) const;
    // Midpoint representative of a joint state.
    StatePoint representative(int joint) const;

private:
    Grid grid_;
    int regimes_;
    DiscreteHmmSpec hmm_;
};

// Brute-force joint-Gaussian smoother: builds the tridiagonal precision of
// p(x_{1:T} | y_{1:T}) for the scalar linear-Gaussian model and inverts it.
struct DenseGaussianMoments {
    std::vector<double> mean, var;
};
DenseGaussianMoments dense_lg_smoother(const KalmanModelSpec& spec, const std::vector<double>& y);

// Normalizes a 1-D log density tabulated on an equispaced grid and returns
// its CDF at the grid points (trapezoid rule).
struct QuadratureCdf {
    std::vector<double> x;
    std::vector<double> cdf;
    double value(double q) const;  // CDF evaluated by interpolation
};
QuadratureCdf quadrature_cdf(const std::function<double(double)>& log_density, double lo, double hi,
                             int points);

// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Total-variation distance between two distributions given as maps.
double tv_distance(const std::map<int, double>& a, const std::map<int, double>& b);

}  // namespace gridpg::testing
