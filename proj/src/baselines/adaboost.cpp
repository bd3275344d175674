#include "baselines/adaboost.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace heartml::baselines {

using heartml::core::Rng;
using heartml::core::ValidationError;

namespace {

// Weighted bootstrap: n draws from the cumulative weight distribution.
std::vector<std::size_t> weighted_resample(const std::vector<double>& weights, Rng& rng) {
    std::vector<double> cumulative(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        cumulative[i] = total;
    }
    std::vector<std::size_t> sample(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double u = rng.next_double() * total;
        std::size_t lo = 0, hi = weights.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= u) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        sample[i] = lo;
    }
    return sample;
}

} // namespace

void AdaBoost::fit(const data::FeatureMatrix& data, const AdaBoostParams& params,
                   std::uint64_t seed) {
    data.check_consistent("AdaBoost::fit");
    if (params.rounds == 0) throw ValidationError("AdaBoost::fit: rounds must be positive");
    learners_.clear();
    alphas_.clear();

    DecisionTreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;

    const std::size_t n = data.rows;
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    const Rng root(seed);

    for (std::size_t round = 0; round < params.rounds; ++round) {
        Rng rng = root.derive(round);
        DecisionTree learner;
        learner.fit(data, tree_params, weights);

        auto weighted_error = [&](const DecisionTree& tree) {
            double err = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                if (tree.predict({data.row(r), data.cols}) != data.labels[r]) {
                    err += weights[r];
                }
            }
            return err;
        };

        double error = weighted_error(learner);
        if (error >= 0.5) {
            DecisionTree retry;
            retry.fit(data, tree_params, {}, weighted_resample(weights, rng));
            const double retry_error = weighted_error(retry);
            if (retry_error >= 0.5) break;
            learner = std::move(retry);
            error = retry_error;
        }

        if (error <= 0.0) {
            learners_.push_back(std::move(learner));
            alphas_.push_back(kAdaBoostAlphaCap);
            break;
        }

        const double alpha = 0.5 * std::log((1.0 - error) / error);
        for (std::size_t r = 0; r < n; ++r) {
            const bool wrong = learner.predict({data.row(r), data.cols}) != data.labels[r];
            weights[r] *= std::exp(wrong ? alpha : -alpha);
        }
        double total = 0.0;
        for (double w : weights) total += w;
        for (double& w : weights) w /= total;

        learners_.push_back(std::move(learner));
        alphas_.push_back(alpha);
    }

    if (learners_.empty()) {
        throw ValidationError("AdaBoost::fit: no learner reached error below 0.5");
    }
}

double AdaBoost::decision_score(std::span<const double> row) const {
    if (learners_.empty()) throw ValidationError("AdaBoost: predict before fit");
    double score = 0.0;
    for (std::size_t t = 0; t < learners_.size(); ++t) {
        score += alphas_[t] * (learners_[t].predict(row) == 1 ? 1.0 : -1.0);
    }
    return score;
}

int AdaBoost::predict(std::span<const double> row) const {
    return decision_score(row) >= 0.0 ? 1 : 0;
}

std::vector<int> AdaBoost::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

} // namespace heartml::baselines
