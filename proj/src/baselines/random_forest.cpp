#include "baselines/random_forest.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace heartml::baselines {

using heartml::core::Rng;
using heartml::core::ValidationError;

void RandomForest::fit(const data::FeatureMatrix& data, const RandomForestParams& params,
                       std::uint64_t seed) {
    data.check_consistent("RandomForest::fit");
    if (params.n_trees == 0) {
        throw ValidationError("RandomForest::fit: n_trees must be positive");
    }
    std::size_t feature_subset = params.feature_subset;
    if (feature_subset == 0) {
        feature_subset = static_cast<std::size_t>(
            std::floor(std::sqrt(static_cast<double>(data.cols))));
        if (feature_subset == 0) feature_subset = 1;
    }
    if (feature_subset > data.cols) {
        throw ValidationError("RandomForest::fit: feature_subset exceeds column count");
    }

    DecisionTreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;
    tree_params.feature_subset = feature_subset;

    const Rng root(seed);
    trees_.assign(params.n_trees, DecisionTree());
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        Rng rng = root.derive(t);
        std::vector<std::size_t> sample(data.rows);
        for (std::size_t i = 0; i < data.rows; ++i) sample[i] = rng.below(data.rows);
        trees_[t].fit(data, tree_params, {}, sample, &rng);
    }
}

int RandomForest::predict(std::span<const double> row) const {
    if (trees_.empty()) throw ValidationError("RandomForest: predict before fit");
    std::size_t votes[2] = {0, 0};
    double mass[2] = {0.0, 0.0};
    for (const DecisionTree& tree : trees_) {
        ++votes[static_cast<std::size_t>(tree.predict(row))];
        const auto dist = tree.class_distribution(row);
        mass[0] += dist[0];
        mass[1] += dist[1];
    }
    if (votes[1] != votes[0]) return votes[1] > votes[0] ? 1 : 0;
    if (mass[1] != mass[0]) return mass[1] > mass[0] ? 1 : 0;
    return 0;
}

std::vector<int> RandomForest::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

} // namespace heartml::baselines
