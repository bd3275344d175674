#include "eval/cv.hpp"

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace heartml::eval {

using heartml::core::Rng;
using heartml::core::ValidationError;

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw ValidationError("accuracy: prediction and label counts differ");
    }
    if (predictions.empty()) throw ValidationError("accuracy: empty input");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

CVResult run_cv(const Method& method, const Hyperparams& params,
                const data::FeatureMatrix& engineered, const FoldPlan& plan,
                std::uint64_t seed, std::size_t workers) {
    engineered.check_consistent("run_cv");
    if (plan.rows() != engineered.rows) {
        throw ValidationError("run_cv: fold plan row count does not match the matrix");
    }

    CVResult result;
    result.method = method.name();
    result.params = params;
    result.fold_accuracies.assign(plan.k, 0.0);
    result.fold_scalers.assign(plan.k, FoldScalerInfo{});

    const Rng root(seed);
    const bool scale = engineered.cols == data::kFeatureCount;

    core::parallel_for(
        plan.k,
        [&](std::size_t fold) {
            const Rng fold_rng = root.derive(fold);
            const auto train_idx = plan.train_rows(fold);
            const auto test_idx = plan.test_rows(fold);
            data::FeatureMatrix train = engineered.subset(train_idx);
            data::FeatureMatrix test = engineered.subset(test_idx);

            if (scale) {
                const std::size_t numeric_columns[] = {data::kMaxHrColumn,
                                                       data::kOldpeakColumn};
                data::MinMaxScaler scaler;
                scaler.fit(train, numeric_columns);
                scaler.transform(train);
                scaler.transform(test);
                result.fold_scalers[fold].minimums = scaler.minimums();
                result.fold_scalers[fold].maximums = scaler.maximums();
            }

            const auto predictor = method.fit(train, params, fold_rng.seed());
            const std::vector<int> predictions = predictor->predict(test);
            result.fold_accuracies[fold] =
                100.0 * accuracy(predictions, test.labels);
        },
        workers);

    const Summary s = summarize(result.fold_accuracies);
    result.mean = s.mean;
    result.sd = s.sd;
    return result;
}

} // namespace heartml::eval
