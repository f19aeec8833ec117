#include "gridpg/ssm.hpp"

#include "gridpg/common.hpp"

namespace gridpg {

std::pair<StatePath, ObservationSeries> simulate_dataset(const SsmModel& model,
                                                         const ModelParameters& theta, int T,
                                                         std::uint64_t seed) {
    if (T < 1) throw ConfigError("simulate_dataset: T must be >= 1");
    model.validate(theta);

    RngStream rng(seed);
    StatePath path;
    path.reserve(T);
    ObservationSeries series;
    series.values.reserve(T);

    StatePoint x = model.simulate_initial(theta, rng);
    path.push_back(x);
    series.values.push_back(model.simulate_observation(x, theta, rng));
    for (int t = 1; t < T; ++t) {
        x = model.simulate_transition(x, theta, rng);
        path.push_back(x);
        series.values.push_back(model.simulate_observation(x, theta, rng));
    }
    return {std::move(path), std::move(series)};
}

}  // namespace gridpg
