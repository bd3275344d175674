#include "eval/grid.hpp"

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace heartml::eval {

using heartml::core::Rng;
using heartml::core::ValidationError;

std::vector<Hyperparams> enumerate_grid(const GridSpec& grid) {
    for (const auto& [name, values] : grid) {
        if (values.empty()) {
            throw ValidationError("enumerate_grid: dimension '" + name + "' has no values");
        }
    }
    std::vector<Hyperparams> points{Hyperparams{}};
    // std::map iterates dimensions in name order, which fixes enumeration.
    for (const auto& [name, values] : grid) {
        std::vector<Hyperparams> expanded;
        expanded.reserve(points.size() * values.size());
        for (const auto& point : points) {
            for (double value : values) {
                Hyperparams next = point;
                next[name] = value;
                expanded.push_back(std::move(next));
            }
        }
        points = std::move(expanded);
    }
    return points;
}

GridSearchResult grid_search(const Method& method, const GridSpec& grid,
                             const data::FeatureMatrix& engineered, const FoldPlan& plan,
                             std::uint64_t seed, std::size_t workers) {
    const std::vector<Hyperparams> points = enumerate_grid(grid);
    GridSearchResult result;
    result.all.resize(points.size());

    const Rng root(seed);
    for (std::size_t i = 0; i < points.size(); ++i) {
        result.all[i] =
            run_cv(method, points[i], engineered, plan, root.derive(i).seed(), workers);
    }

    result.best_index = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const CVResult& candidate = result.all[i];
        const CVResult& incumbent = result.all[result.best_index];
        if (candidate.mean > incumbent.mean ||
            (candidate.mean == incumbent.mean && candidate.sd < incumbent.sd)) {
            result.best_index = i;
        }
    }
    result.best = result.all[result.best_index];
    return result;
}

} // namespace heartml::eval
