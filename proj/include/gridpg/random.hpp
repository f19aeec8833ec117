#pragma once

#include <cstdint>
#include <span>

namespace gridpg {

// Draw source consumed by every stochastic routine in the library.
//
// Keeping the surface down to a uniform draw plus a categorical draw lets the
// test suite substitute an exhaustive-enumeration source that walks every
// discrete branch of a sampler sweep.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform draw on [0, 1).
    virtual double uniform() = 0;

    // Index draw given an inclusive-prefix-sum CDF (last entry ~ 1).
    // Default implementation inverts one uniform by binary search.
    virtual int categorical_from_cdf(std::span<const double> cdf);
};

// Counter-based splittable stream backed by splitmix64.
//
// `child` derives an independent stream from the immutable key and up to
// three path components, so chains, sweeps, and replicates can be keyed
// reproducibly without sharing state.
class RngStream final : public RandomSource {
public:
    explicit RngStream(std::uint64_t seed);

    RngStream child(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

    std::uint64_t next_u64();
    double uniform() override;

private:
    std::uint64_t key_;
    std::uint64_t state_;
};

// Distribution draws composed from RandomSource::uniform so that every
// source, including test doubles, gets the same stream consumption.
double draw_normal(RandomSource& rng, double mean, double sd);
double draw_gamma(RandomSource& rng, double shape, double scale);
double draw_beta(RandomSource& rng, double a, double b);
double draw_inverse_gamma(RandomSource& rng, double shape, double rate);

// Truncated normal on (-inf, bound] or [bound, inf) by CDF inversion.
double draw_truncated_normal_below(RandomSource& rng, double mean, double sd, double upper);
double draw_truncated_normal_above(RandomSource& rng, double mean, double sd, double lower);

// Categorical draw from unnormalized nonnegative weights (linear scan).
int draw_categorical(RandomSource& rng, std::span<const double> weights);

}  // namespace gridpg
