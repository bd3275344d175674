#include "baselines/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include "core/errors.hpp"

namespace heartml::baselines {

using heartml::core::InternalError;
using heartml::core::Rng;
using heartml::core::ValidationError;

double gini_impurity(double mass0, double mass1) {
    const double total = mass0 + mass1;
    if (total <= 0.0) return 0.0;
    const double p0 = mass0 / total, p1 = mass1 / total;
    return 1.0 - p0 * p0 - p1 * p1;
}

SplitChoice best_split(const data::FeatureMatrix& data,
                       std::span<const std::size_t> rows,
                       std::span<const double> weights,
                       std::span<const int> features, std::size_t min_leaf) {
    SplitChoice best;
    if (rows.size() < 2 * min_leaf) return best;

    std::vector<std::pair<double, std::size_t>> ordered(rows.size());
    for (int feature : features) {
        const std::size_t f = static_cast<std::size_t>(feature);
        if (f >= data.cols) throw ValidationError("best_split: feature index out of range");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ordered[i] = {data.at(rows[i], f), rows[i]};
        }
        std::sort(ordered.begin(), ordered.end());

        double left0 = 0.0, left1 = 0.0, right0 = 0.0, right1 = 0.0;
        for (std::size_t r : rows) {
            const double w = weights[r];
            (data.labels[r] == 0 ? right0 : right1) += w;
        }
        const double total = right0 + right1;

        for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
            const std::size_t r = ordered[i].second;
            const double w = weights[r];
            if (data.labels[r] == 0) {
                left0 += w;
                right0 -= w;
            } else {
                left1 += w;
                right1 -= w;
            }
            if (ordered[i].first == ordered[i + 1].first) continue;
            const std::size_t left_count = i + 1;
            const std::size_t right_count = ordered.size() - left_count;
            if (left_count < min_leaf || right_count < min_leaf) continue;
            const double impurity = ((left0 + left1) * gini_impurity(left0, left1) +
                                     (right0 + right1) * gini_impurity(right0, right1)) /
                                    total;
            if (impurity < best.impurity) {
                best.found = true;
                best.feature = feature;
                best.threshold = ordered[i].first + (ordered[i + 1].first - ordered[i].first) / 2.0;
                best.impurity = impurity;
            }
        }
    }
    return best;
}

void DecisionTree::fit(const data::FeatureMatrix& data, const DecisionTreeParams& params,
                       std::span<const double> weights,
                       std::span<const std::size_t> rows, Rng* rng) {
    data.check_consistent("DecisionTree::fit");
    if (data.rows == 0) throw ValidationError("DecisionTree::fit: empty dataset");
    for (int label : data.labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("DecisionTree::fit: labels must be 0 or 1");
        }
    }
    if (params.feature_subset > data.cols) {
        throw ValidationError("DecisionTree::fit: feature_subset exceeds column count");
    }
    if (params.feature_subset > 0 && rng == nullptr) {
        throw ValidationError("DecisionTree::fit: feature subsampling needs an Rng");
    }
    if (params.min_leaf == 0) {
        throw ValidationError("DecisionTree::fit: min_leaf must be at least 1");
    }

    std::vector<double> uniform;
    if (weights.empty()) {
        uniform.assign(data.rows, 1.0);
        weights = uniform;
    } else if (weights.size() != data.rows) {
        throw ValidationError("DecisionTree::fit: weight count does not match rows");
    }

    std::vector<std::size_t> all_rows;
    if (rows.empty()) {
        all_rows.resize(data.rows);
        std::iota(all_rows.begin(), all_rows.end(), 0);
    } else {
        all_rows.assign(rows.begin(), rows.end());
    }

    nodes_.clear();
    expected_cols_ = data.cols;
    build(data, all_rows, weights, params, 0, rng);
}

int DecisionTree::build(const data::FeatureMatrix& data, std::vector<std::size_t>& rows,
                        std::span<const double> weights,
                        const DecisionTreeParams& params, std::size_t depth, Rng* rng) {
    TreeNode node;
    for (std::size_t r : rows) {
        node.class_mass[static_cast<std::size_t>(data.labels[r])] += weights[r];
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    const bool pure = node.class_mass[0] == 0.0 || node.class_mass[1] == 0.0;
    const bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
    if (pure || depth_capped || rows.size() < 2 * params.min_leaf) return index;

    std::vector<int> features;
    if (params.feature_subset == 0 || params.feature_subset == data.cols) {
        features.resize(data.cols);
        std::iota(features.begin(), features.end(), 0);
    } else {
        std::vector<int> pool(data.cols);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < params.feature_subset; ++i) {
            std::size_t j = i + rng->below(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        features.assign(pool.begin(), pool.begin() + static_cast<long>(params.feature_subset));
    }

    SplitChoice split = best_split(data, rows, weights, features, params.min_leaf);
    if (!split.found) return index;

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t r : rows) {
        (data.at(r, static_cast<std::size_t>(split.feature)) < split.threshold
             ? left_rows
             : right_rows)
            .push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) {
        throw InternalError("DecisionTree::build: degenerate split");
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = build(data, left_rows, weights, params, depth + 1, rng);
    const int right = build(data, right_rows, weights, params, depth + 1, rng);
    nodes_[static_cast<std::size_t>(index)].feature = split.feature;
    nodes_[static_cast<std::size_t>(index)].threshold = split.threshold;
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> row) const {
    if (!trained()) throw ValidationError("DecisionTree: predict before fit");
    if (row.size() != expected_cols_) {
        throw ValidationError("DecisionTree: row has wrong column count");
    }
    const TreeNode* node = &nodes_[0];
    while (!node->is_leaf()) {
        const std::size_t f = static_cast<std::size_t>(node->feature);
        node = &nodes_[static_cast<std::size_t>(row[f] < node->threshold ? node->left
                                                                         : node->right)];
    }
    return *node;
}

int DecisionTree::predict(std::span<const double> row) const {
    const TreeNode& leaf = leaf_for(row);
    return leaf.class_mass[1] > leaf.class_mass[0] ? 1 : 0;
}

std::array<double, 2> DecisionTree::class_distribution(std::span<const double> row) const {
    const TreeNode& leaf = leaf_for(row);
    const double total = leaf.class_mass[0] + leaf.class_mass[1];
    if (total <= 0.0) return {0.5, 0.5};
    return {leaf.class_mass[0] / total, leaf.class_mass[1] / total};
}

std::vector<int> DecisionTree::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

} // namespace heartml::baselines
