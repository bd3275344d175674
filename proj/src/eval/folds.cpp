#include "eval/folds.hpp"

#include <numeric>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace heartml::eval {

using heartml::core::Rng;
using heartml::core::ValidationError;

std::vector<std::size_t> FoldPlan::test_rows(std::size_t fold) const {
    if (fold >= k) throw ValidationError("FoldPlan::test_rows: fold out of range");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == static_cast<int>(fold)) rows.push_back(i);
    }
    return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t fold) const {
    if (fold >= k) throw ValidationError("FoldPlan::train_rows: fold out of range");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != static_cast<int>(fold)) rows.push_back(i);
    }
    return rows;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
}

namespace {

void check_fold_args(std::size_t n, std::size_t k) {
    if (k < 2) throw ValidationError("kfold_split: k must be at least 2");
    if (n < k) throw ValidationError("kfold_split: need at least k rows");
}

} // namespace

FoldPlan kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    check_fold_args(n, k);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(n, 0);
    const std::size_t base = n / k;
    const std::size_t remainder = n % k;
    std::size_t cursor = 0;
    for (std::size_t fold = 0; fold < k; ++fold) {
        const std::size_t size = base + (fold < remainder ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) {
            plan.assignments[order[cursor++]] = static_cast<int>(fold);
        }
    }
    return plan;
}

FoldPlan stratified_kfold_split(const std::vector<int>& labels, std::size_t k,
                                std::uint64_t seed) {
    check_fold_args(labels.size(), k);
    std::vector<std::size_t> group0, group1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0) {
            group0.push_back(i);
        } else if (labels[i] == 1) {
            group1.push_back(i);
        } else {
            throw ValidationError("stratified_kfold_split: labels must be 0 or 1");
        }
    }
    Rng rng(seed);
    rng.shuffle(group0);
    rng.shuffle(group1);

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.stratified = true;
    plan.assignments.assign(labels.size(), 0);
    // Deal each class in turn, continuing the fold cursor across classes so
    // fold sizes stay within one of each other.
    std::size_t cursor = 0;
    for (const auto* group : {&group0, &group1}) {
        for (std::size_t row : *group) {
            plan.assignments[row] = static_cast<int>(cursor % k);
            ++cursor;
        }
    }
    return plan;
}

} // namespace heartml::eval
