// Bagged decision trees with per-split feature subsampling. Each tree draws
// its bootstrap sample and split features from an independent RNG stream
// derived from the forest seed, so the ensemble is insensitive to build
// order.
#pragma once

#include <vector>

#include "baselines/decision_tree.hpp"

namespace heartml::baselines {

struct RandomForestParams {
    std::size_t n_trees = 100;
    std::size_t feature_subset = 0; // 0 = floor(sqrt(columns))
    std::size_t max_depth = 0;
    std::size_t min_leaf = 1;
};

class RandomForest {
public:
    void fit(const data::FeatureMatrix& data, const RandomForestParams& params,
             std::uint64_t seed);

    // Majority vote; a vote tie falls back to the summed leaf distributions,
    // a remaining tie picks label 0.
    int predict(std::span<const double> row) const;
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }

private:
    std::vector<DecisionTree> trees_;
};

} // namespace heartml::baselines
