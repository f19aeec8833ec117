#pragma once

#include <span>

#include "gridpg/grid_hmm.hpp"

namespace gridpg {

// HMM-approximation freezing schedule: after iteration `freeze_after` the
// approximation is rebuilt once from the averaged parameter estimates of the
// trailing `window` samples and then held fixed.
struct FreezePolicy {
    long freeze_after = 2000;  // 0 freezes immediately at theta^(0)
    int window = 1000;
};

// Windowed parameter mean over the tail of `theta_history`, which holds
// [theta^(0) .. theta^(freeze_after)] when called at freeze time.
ModelParameters windowed_parameter_mean(std::span<const ModelParameters> theta_history, int window);

// Builds the frozen approximation. Throws ConfigError when fewer than
// `window` samples are available.
HmmApprox freeze_hmm(const FreezePolicy& policy, std::span<const ModelParameters> theta_history,
                     const Grid& grid, const SsmModel& model, const ObservationSeries& y,
                     double floor);

}  // namespace gridpg
