// Discrete AdaBoost over shallow decision trees with labels mapped to
// {-1, +1}. A perfect learner gets the capped weight 0.5 * ln(1e10) and ends
// the loop; a learner at error >= 0.5 triggers one weighted resample retry
// before boosting stops.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "baselines/decision_tree.hpp"

namespace heartml::baselines {

inline constexpr double kAdaBoostAlphaCap = 11.512925464970229; // 0.5 * ln(1e10)

struct AdaBoostParams {
    std::size_t rounds = 50;
    std::size_t max_depth = 1;
    std::size_t min_leaf = 1;
};

class AdaBoost {
public:
    void fit(const data::FeatureMatrix& data, const AdaBoostParams& params,
             std::uint64_t seed);

    int predict(std::span<const double> row) const;
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    // Signed ensemble score; prediction is 1 when the score is >= 0.
    double decision_score(std::span<const double> row) const;

    const std::vector<double>& alphas() const noexcept { return alphas_; }
    std::size_t rounds_used() const noexcept { return learners_.size(); }

private:
    std::vector<DecisionTree> learners_;
    std::vector<double> alphas_;
};

} // namespace heartml::baselines
