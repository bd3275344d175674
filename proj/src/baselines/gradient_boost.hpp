// Gradient boosting for binary classification with logistic loss. The
// ensemble starts from the base-rate log odds and each round fits a
// regression tree to the negative gradient (label minus predicted
// probability), added with shrinkage.
#pragma once

#include <span>
#include <vector>

#include "baselines/regression_tree.hpp"

namespace heartml::baselines {

struct GradientBoostParams {
    std::size_t rounds = 100;
    double learning_rate = 0.1;
    std::size_t max_depth = 3;
    std::size_t min_leaf = 1;
};

class GradientBoost {
public:
    void fit(const data::FeatureMatrix& data, const GradientBoostParams& params);

    double predict_score(std::span<const double> row) const; // log odds
    double predict_proba(std::span<const double> row) const;
    int predict(std::span<const double> row) const; // proba >= 0.5 -> 1
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    double initial_score() const noexcept { return initial_score_; }
    std::size_t rounds_used() const noexcept { return trees_.size(); }

    // Mean logistic loss of the current ensemble on a labeled set.
    double logistic_loss(const data::FeatureMatrix& data) const;

private:
    double initial_score_ = 0.0;
    double learning_rate_ = 0.1;
    std::vector<RegressionTree> trees_;
};

} // namespace heartml::baselines
