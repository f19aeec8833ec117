#include "gridpg/freeze.hpp"

#include "gridpg/common.hpp"

namespace gridpg {

ModelParameters windowed_parameter_mean(std::span<const ModelParameters> theta_history,
                                        int window) {
    if (window < 1) throw ConfigError("freeze: window must be at least 1");
    if (static_cast<int>(theta_history.size()) < window)
        throw ConfigError("freeze: not enough samples for the averaging window");
    const size_t begin = theta_history.size() - static_cast<size_t>(window);
    ModelParameters mean = theta_history[begin];
    for (size_t s = begin + 1; s < theta_history.size(); ++s)
        for (size_t i = 0; i < mean.values.size(); ++i)
            mean.values[i] += theta_history[s].values[i];
    for (double& v : mean.values) v /= window;
    return mean;
}

HmmApprox freeze_hmm(const FreezePolicy& policy, std::span<const ModelParameters> theta_history,
                     const Grid& grid, const SsmModel& model, const ObservationSeries& y,
                     double floor) {
    if (policy.freeze_after < 0) throw ConfigError("freeze: freeze_after must be nonnegative");
    return approx_hmm(grid, windowed_parameter_mean(theta_history, policy.window), model, y, floor);
}

}  // namespace gridpg
