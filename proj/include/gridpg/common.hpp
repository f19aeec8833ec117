#pragma once

#include <stdexcept>
#include <string>

namespace gridpg {

// Bad run configuration or inconsistent inputs. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter values outside the model's admissible domain.
class ParameterDomainError : public std::runtime_error {
public:
    explicit ParameterDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Every particle weight collapsed to zero mass. CLI exit code 2.
class DegenerateWeightsError : public std::runtime_error {
public:
    explicit DegenerateWeightsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridpg
