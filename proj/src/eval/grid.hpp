// Exhaustive hyperparameter search over a named grid. Points are
// enumerated deterministically: dimensions in lexicographic name order,
// values in the order listed. Ties on mean accuracy prefer the lower fold
// standard deviation, then the earlier point.
#pragma once

#include "eval/cv.hpp"

namespace heartml::eval {

std::vector<Hyperparams> enumerate_grid(const GridSpec& grid);

struct GridSearchResult {
    CVResult best;
    std::size_t best_index = 0;
    std::vector<CVResult> all; // enumeration order
};

GridSearchResult grid_search(const Method& method, const GridSpec& grid,
                             const data::FeatureMatrix& engineered, const FoldPlan& plan,
                             std::uint64_t seed, std::size_t workers = 0);

} // namespace heartml::eval
