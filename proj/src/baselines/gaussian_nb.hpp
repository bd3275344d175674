// Gaussian naive Bayes in log space. Per-class feature variances use the
// maximum-likelihood estimate floored at 1e-9 so indicator columns cannot
// collapse the density.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "data/features.hpp"

namespace heartml::baselines {

inline constexpr double kGnbVarianceFloor = 1e-9;

class GaussianNb {
public:
    void fit(const data::FeatureMatrix& data);

    int predict(std::span<const double> row) const;
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    // Unnormalized log posteriors: log prior + sum of log densities.
    std::array<double, 2> log_posteriors(std::span<const double> row) const;
    // Normalized posterior probabilities.
    std::array<double, 2> posteriors(std::span<const double> row) const;

    const std::vector<double>& means(int label) const;
    const std::vector<double>& variances(int label) const;
    double prior(int label) const;

private:
    std::array<double, 2> priors_{0.0, 0.0};
    std::array<std::vector<double>, 2> means_;
    std::array<std::vector<double>, 2> variances_;
    std::size_t cols_ = 0;
};

} // namespace heartml::baselines
