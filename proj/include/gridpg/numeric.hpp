#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace gridpg {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLogTwoPi = 1.8378770664093454836;

inline double normal_logpdf(double x, double mean, double variance) {
    const double d = x - mean;
    return -0.5 * (kLogTwoPi + std::log(variance) + d * d / variance);
}

// Standard normal CDF via erfc; accurate in both tails.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

// Inverse standard normal CDF: Acklam's rational approximation refined with
// one Halley step, giving close to full double precision on (0, 1).
double normal_quantile(double p);

// log(sum(exp(v))) with the usual max shift. All -inf input yields -inf.
double log_sum_exp(std::span<const double> v);

// Exponentiates shifted log weights into `out`, normalized to sum 1.
// Returns false when every entry is -inf (no mass to normalize).
bool normalize_log_weights(std::span<const double> log_w, std::span<double> out);

// Minimal dense row-major matrix; enough for the HMM tables used here.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<double> row(int i) { return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)}; }
    std::span<const double> row(int i) const {
        return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

}  // namespace gridpg
