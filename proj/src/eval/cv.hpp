// Cross-validation harness. Per fold: split, fit the min-max scaler on the
// training rows only, transform both sides, fit, score. Fold work items use
// RNG streams derived from the base seed so results do not depend on
// execution order or worker count.
#pragma once

#include <span>

#include "eval/folds.hpp"
#include "eval/method.hpp"
#include "eval/stats.hpp"

namespace heartml::eval {

// Fraction of agreeing positions.
double accuracy(std::span<const int> predictions, std::span<const int> labels);

struct FoldScalerInfo {
    std::vector<double> minimums;
    std::vector<double> maximums;
};

struct CVResult {
    std::string method;
    Hyperparams params;
    std::vector<double> fold_accuracies; // percent
    double mean = 0.0;                   // percent
    double sd = 0.0;                     // sample SD, percent
    // Scaler ranges actually used per fold; lets tests prove the scaler saw
    // training rows only.
    std::vector<FoldScalerInfo> fold_scalers;
};

// `engineered` carries raw-scale numeric columns; scaling happens per fold
// inside this function. `workers` = 0 picks the hardware default.
CVResult run_cv(const Method& method, const Hyperparams& params,
                const data::FeatureMatrix& engineered, const FoldPlan& plan,
                std::uint64_t seed, std::size_t workers = 0);

} // namespace heartml::eval
