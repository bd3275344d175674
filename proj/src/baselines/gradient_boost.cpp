#include "baselines/gradient_boost.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "tensor/layers.hpp"
#include "tensor/losses.hpp"

namespace heartml::baselines {

using heartml::core::ValidationError;
using heartml::tensor::sigmoid;

void GradientBoost::fit(const data::FeatureMatrix& data, const GradientBoostParams& params) {
    data.check_consistent("GradientBoost::fit");
    if (params.rounds == 0) {
        throw ValidationError("GradientBoost::fit: rounds must be positive");
    }
    if (params.learning_rate <= 0.0) {
        throw ValidationError("GradientBoost::fit: learning_rate must be positive");
    }
    std::size_t positives = 0;
    for (int label : data.labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("GradientBoost::fit: labels must be 0 or 1");
        }
        positives += static_cast<std::size_t>(label);
    }
    if (positives == 0 || positives == data.rows) {
        throw ValidationError("GradientBoost::fit: both classes must be present");
    }

    learning_rate_ = params.learning_rate;
    initial_score_ = std::log(static_cast<double>(positives) /
                              static_cast<double>(data.rows - positives));
    trees_.clear();

    RegressionTreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;

    std::vector<double> scores(data.rows, initial_score_);
    std::vector<double> residuals(data.rows);
    for (std::size_t round = 0; round < params.rounds; ++round) {
        for (std::size_t r = 0; r < data.rows; ++r) {
            residuals[r] = static_cast<double>(data.labels[r]) - sigmoid(scores[r]);
        }
        RegressionTree tree;
        tree.fit(data, residuals, tree_params);
        for (std::size_t r = 0; r < data.rows; ++r) {
            scores[r] += learning_rate_ * tree.predict({data.row(r), data.cols});
        }
        trees_.push_back(std::move(tree));
    }
}

double GradientBoost::predict_score(std::span<const double> row) const {
    if (trees_.empty()) throw ValidationError("GradientBoost: predict before fit");
    double score = initial_score_;
    for (const RegressionTree& tree : trees_) {
        score += learning_rate_ * tree.predict(row);
    }
    return score;
}

double GradientBoost::predict_proba(std::span<const double> row) const {
    return sigmoid(predict_score(row));
}

int GradientBoost::predict(std::span<const double> row) const {
    return predict_proba(row) >= 0.5 ? 1 : 0;
}

std::vector<int> GradientBoost::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

double GradientBoost::logistic_loss(const data::FeatureMatrix& data) const {
    double total = 0.0;
    for (std::size_t r = 0; r < data.rows; ++r) {
        double p = predict_proba({data.row(r), data.cols});
        if (p < heartml::tensor::kProbabilityClamp) p = heartml::tensor::kProbabilityClamp;
        if (p > 1.0 - heartml::tensor::kProbabilityClamp) {
            p = 1.0 - heartml::tensor::kProbabilityClamp;
        }
        const double y = static_cast<double>(data.labels[r]);
        total += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    return total / static_cast<double>(data.rows);
}

} // namespace heartml::baselines
