// CART-style binary classification tree. Splits minimize weighted Gini
// impurity over midpoint thresholds between consecutive distinct feature
// values; rows with value < threshold go left. Supports per-sample weights
// (boosting) and per-split feature subsampling (forests).
#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "core/rng.hpp"
#include "data/features.hpp"

namespace heartml::baselines {

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::array<double, 2> class_mass{0.0, 0.0}; // weighted label mass

    bool is_leaf() const noexcept { return feature < 0; }
};

struct DecisionTreeParams {
    std::size_t max_depth = 0;      // 0 = grow until pure
    std::size_t min_leaf = 1;       // minimum rows per child
    std::size_t feature_subset = 0; // 0 = consider every feature at each split
};

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double impurity = std::numeric_limits<double>::infinity();
};

// Exhaustive scan over `features` (in the order given) and midpoint
// thresholds; ties keep the earliest candidate. Children smaller than
// `min_leaf` rows are not considered.
SplitChoice best_split(const data::FeatureMatrix& data,
                       std::span<const std::size_t> rows,
                       std::span<const double> weights,
                       std::span<const int> features, std::size_t min_leaf);

double gini_impurity(double mass0, double mass1);

class DecisionTree {
public:
    // `weights` defaults to uniform, `rows` to all rows. `rng` is only
    // consulted when params.feature_subset is non-zero.
    void fit(const data::FeatureMatrix& data, const DecisionTreeParams& params = {},
             std::span<const double> weights = {},
             std::span<const std::size_t> rows = {}, core::Rng* rng = nullptr);

    int predict(std::span<const double> row) const;
    std::array<double, 2> class_distribution(std::span<const double> row) const;
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    bool trained() const noexcept { return !nodes_.empty(); }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t expected_columns() const noexcept { return expected_cols_; }

private:
    int build(const data::FeatureMatrix& data, std::vector<std::size_t>& rows,
              std::span<const double> weights, const DecisionTreeParams& params,
              std::size_t depth, core::Rng* rng);
    const TreeNode& leaf_for(std::span<const double> row) const;

    std::vector<TreeNode> nodes_;
    std::size_t expected_cols_ = 0;
};

} // namespace heartml::baselines
