#pragma once

#include <optional>
#include <string>

#include "gridpg/ssm.hpp"

namespace gridpg {

struct Dataset {
    ObservationSeries y;
    std::optional<StatePath> truth;  // latent path for simulated data

    int length() const { return y.length(); }
};

// CSV with columns t,y and, for simulated data, x_true,s_true. t is 1-based.
void write_dataset_csv(const std::string& path, const Dataset& data);
Dataset read_dataset_csv(const std::string& path);

// Doubles are printed with 17 significant digits so files round-trip
// bit-exactly.
std::string format_double(double v);

}  // namespace gridpg
