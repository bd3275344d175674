// Regression tree on squared error, used as the weak learner for gradient
// boosting. Same split conventions as the classification tree: midpoint
// thresholds, value < threshold goes left, ties keep the earliest candidate.
#pragma once

#include <span>
#include <vector>

#include "data/features.hpp"

namespace heartml::baselines {

struct RegressionTreeParams {
    std::size_t max_depth = 3;
    std::size_t min_leaf = 1;
};

struct RegressionNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0; // mean target at the node

    bool is_leaf() const noexcept { return feature < 0; }
};

class RegressionTree {
public:
    void fit(const data::FeatureMatrix& data, std::span<const double> targets,
             const RegressionTreeParams& params = {});

    double predict(std::span<const double> row) const;

    bool trained() const noexcept { return !nodes_.empty(); }
    const std::vector<RegressionNode>& nodes() const noexcept { return nodes_; }

private:
    int build(const data::FeatureMatrix& data, std::span<const double> targets,
              std::vector<std::size_t>& rows, const RegressionTreeParams& params,
              std::size_t depth);

    std::vector<RegressionNode> nodes_;
    std::size_t expected_cols_ = 0;
};

} // namespace heartml::baselines
