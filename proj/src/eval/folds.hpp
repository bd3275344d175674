// K-fold assignment: a seeded shuffle followed by contiguous partition, so
// 918 rows under 10 folds give eight folds of 92 and two of 91. A
// stratified variant keeps the label ratio per fold.
#pragma once

#include <cstdint>
#include <vector>

namespace heartml::eval {

struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool stratified = false;
    std::vector<int> assignments; // fold id per row

    std::size_t rows() const noexcept { return assignments.size(); }
    std::vector<std::size_t> test_rows(std::size_t fold) const;
    std::vector<std::size_t> train_rows(std::size_t fold) const;
    std::vector<std::size_t> fold_sizes() const;
};

FoldPlan kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);
FoldPlan stratified_kfold_split(const std::vector<int>& labels, std::size_t k,
                                std::uint64_t seed);

} // namespace heartml::eval
