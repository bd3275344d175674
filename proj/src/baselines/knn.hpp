// k-nearest-neighbour classification under Euclidean distance. Distance
// ties order by lower training row index; a vote tie goes to the tied class
// holding the lowest row index inside the neighbour set.
#pragma once

#include <span>
#include <vector>

#include "data/features.hpp"

namespace heartml::baselines {

struct KnnParams {
    std::size_t k = 5;
};

class KnnClassifier {
public:
    void fit(const data::FeatureMatrix& data, const KnnParams& params);

    int predict(std::span<const double> row) const;
    std::vector<int> predict_all(const data::FeatureMatrix& data) const;

    // Neighbour row indices in vote order; exposed for oracle tests.
    std::vector<std::size_t> neighbours(std::span<const double> row) const;

private:
    data::FeatureMatrix train_;
    std::size_t k_ = 0;
};

} // namespace heartml::baselines
