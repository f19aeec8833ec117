#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridpg/numeric.hpp"
#include "gridpg/random.hpp"

namespace gridpg {

// Joint latent state at one time point: a discrete regime label in {1..R}
// (R = 1 for purely continuous models) plus a continuous value.
struct StatePoint {
    int regime = 1;
    double value = 0.0;

    friend bool operator==(const StatePoint&, const StatePoint&) = default;
};

using StatePath = std::vector<StatePoint>;

struct ObservationSeries {
    std::vector<double> values;
    std::string time_origin;  // free-form provenance label, e.g. an ISO date

    int length() const { return static_cast<int>(values.size()); }
};

// Opaque flat parameter container; each model documents its own index layout.
struct ModelParameters {
    std::vector<double> values;

    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }

    friend bool operator==(const ModelParameters&, const ModelParameters&) = default;
};

// Model contract consumed by every engine and sampler.
//
// Densities are log values over the joint (regime, value) state; impossible
// transitions return -inf rather than throwing, and the weight arithmetic
// treats -inf as zero mass. Simulators must be pure functions of their
// inputs and the rng stream.
class SsmModel {
public:
    virtual ~SsmModel() = default;

    virtual int regime_count() const = 0;

    virtual void validate(const ModelParameters& theta) const = 0;

    virtual double initial_log_density(const StatePoint& x1, const ModelParameters& theta) const = 0;
    virtual double transition_log_density(const StatePoint& x, const StatePoint& prev,
                                          const ModelParameters& theta) const = 0;
    virtual double observation_log_density(double y, const StatePoint& x,
                                           const ModelParameters& theta) const = 0;

    virtual StatePoint simulate_initial(const ModelParameters& theta, RandomSource& rng) const = 0;
    virtual StatePoint simulate_transition(const StatePoint& prev, const ModelParameters& theta,
                                           RandomSource& rng) const = 0;
    virtual double simulate_observation(const StatePoint& x, const ModelParameters& theta,
                                        RandomSource& rng) const = 0;

    // Exact regime transition matrix (row r-1 -> column r'-1) when the model
    // has one; the grid approximation uses it through the joint transition
    // density, so this is informational.
    virtual std::optional<Matrix> regime_transition_matrix(const ModelParameters&) const {
        return std::nullopt;
    }
};

// Ancestral simulation of a dataset of length T. Identical seeds give
// identical output.
std::pair<StatePath, ObservationSeries> simulate_dataset(const SsmModel& model,
                                                         const ModelParameters& theta, int T,
                                                         std::uint64_t seed);

}  // namespace gridpg
