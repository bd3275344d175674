#include "baselines/regression_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "core/errors.hpp"

namespace heartml::baselines {

using heartml::core::ValidationError;

void RegressionTree::fit(const data::FeatureMatrix& data, std::span<const double> targets,
                         const RegressionTreeParams& params) {
    data.check_consistent("RegressionTree::fit");
    if (data.rows == 0) throw ValidationError("RegressionTree::fit: empty dataset");
    if (targets.size() != data.rows) {
        throw ValidationError("RegressionTree::fit: target count does not match rows");
    }
    if (params.min_leaf == 0) {
        throw ValidationError("RegressionTree::fit: min_leaf must be at least 1");
    }
    std::vector<std::size_t> rows(data.rows);
    std::iota(rows.begin(), rows.end(), 0);
    nodes_.clear();
    expected_cols_ = data.cols;
    build(data, targets, rows, params, 0);
}

int RegressionTree::build(const data::FeatureMatrix& data, std::span<const double> targets,
                          std::vector<std::size_t>& rows,
                          const RegressionTreeParams& params, std::size_t depth) {
    RegressionNode node;
    double sum = 0.0;
    for (std::size_t r : rows) sum += targets[r];
    node.value = sum / static_cast<double>(rows.size());
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    const bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
    if (depth_capped || rows.size() < 2 * params.min_leaf) return index;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_sse = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, std::size_t>> ordered(rows.size());
    for (std::size_t f = 0; f < data.cols; ++f) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ordered[i] = {data.at(rows[i], f), rows[i]};
        }
        std::sort(ordered.begin(), ordered.end());

        double left_sum = 0.0, left_sq = 0.0;
        double right_sum = 0.0, right_sq = 0.0;
        for (std::size_t r : rows) {
            right_sum += targets[r];
            right_sq += targets[r] * targets[r];
        }
        for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
            const double t = targets[ordered[i].second];
            left_sum += t;
            left_sq += t * t;
            right_sum -= t;
            right_sq -= t * t;
            if (ordered[i].first == ordered[i + 1].first) continue;
            const std::size_t left_count = i + 1;
            const std::size_t right_count = ordered.size() - left_count;
            if (left_count < params.min_leaf || right_count < params.min_leaf) continue;
            const double sse =
                (left_sq - left_sum * left_sum / static_cast<double>(left_count)) +
                (right_sq - right_sum * right_sum / static_cast<double>(right_count));
            if (sse < best_sse) {
                best_sse = sse;
                best_feature = static_cast<int>(f);
                best_threshold =
                    ordered[i].first + (ordered[i + 1].first - ordered[i].first) / 2.0;
            }
        }
    }
    if (best_feature < 0) return index;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
        (data.at(r, static_cast<std::size_t>(best_feature)) < best_threshold ? left_rows
                                                                             : right_rows)
            .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = build(data, targets, left_rows, params, depth + 1);
    const int right = build(data, targets, right_rows, params, depth + 1);
    nodes_[static_cast<std::size_t>(index)].feature = best_feature;
    nodes_[static_cast<std::size_t>(index)].threshold = best_threshold;
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
}

double RegressionTree::predict(std::span<const double> row) const {
    if (!trained()) throw ValidationError("RegressionTree: predict before fit");
    if (row.size() != expected_cols_) {
        throw ValidationError("RegressionTree: row has wrong column count");
    }
    const RegressionNode* node = &nodes_[0];
    while (!node->is_leaf()) {
        const std::size_t f = static_cast<std::size_t>(node->feature);
        node = &nodes_[static_cast<std::size_t>(row[f] < node->threshold ? node->left
                                                                         : node->right)];
    }
    return node->value;
}

} // namespace heartml::baselines
