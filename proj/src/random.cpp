#include "gridpg/random.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

#include "gridpg/numeric.hpp"

namespace gridpg {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

int RandomSource::categorical_from_cdf(std::span<const double> cdf) {
    assert(!cdf.empty());
    const double u = uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<int>(it - cdf.begin());
}

RngStream::RngStream(std::uint64_t seed) : key_(mix64(seed)), state_(mix64(seed)) {}

RngStream RngStream::child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    std::uint64_t h = key_;
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    h = mix64(h ^ mix64(c));
    RngStream out(0);
    out.key_ = h;
    out.state_ = mix64(h);
    return out;
}

std::uint64_t RngStream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double draw_normal(RandomSource& rng, double mean, double sd) {
    // Box-Muller, cosine branch only, so the draw is stateless.
    const double u1 = 1.0 - rng.uniform();  // (0, 1]
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * M_PI * u2);
}

double draw_gamma(RandomSource& rng, double shape, double scale) {
    assert(shape > 0.0 && scale > 0.0);
    if (shape < 1.0) {
        // Boost to shape+1, then scale back.
        const double u = rng.uniform();
        return draw_gamma(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = draw_normal(rng, 0.0, 1.0);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double draw_beta(RandomSource& rng, double a, double b) {
    const double ga = draw_gamma(rng, a, 1.0);
    const double gb = draw_gamma(rng, b, 1.0);
    return ga / (ga + gb);
}

double draw_inverse_gamma(RandomSource& rng, double shape, double rate) {
    return 1.0 / draw_gamma(rng, shape, 1.0 / rate);
}

double draw_truncated_normal_below(RandomSource& rng, double mean, double sd, double upper) {
    const double cap = normal_cdf((upper - mean) / sd);
    double u = rng.uniform() * cap;
    u = std::clamp(u, 1e-300, 1.0 - 1e-16);
    return mean + sd * normal_quantile(u);
}

double draw_truncated_normal_above(RandomSource& rng, double mean, double sd, double lower) {
    const double base = normal_cdf((lower - mean) / sd);
    double u = base + rng.uniform() * (1.0 - base);
    u = std::clamp(u, 1e-300, 1.0 - 1e-16);
    return mean + sd * normal_quantile(u);
}

int draw_categorical(RandomSource& rng, std::span<const double> weights) {
    assert(!weights.empty());
    constexpr size_t kStack = 64;
    double buf[kStack];
    std::vector<double> heap;
    double* cdf = buf;
    if (weights.size() > kStack) {
        heap.resize(weights.size());
        cdf = heap.data();
    }
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    return rng.categorical_from_cdf({cdf, weights.size()});
}

}  // namespace gridpg
