#include "baselines/knn.hpp"

#include <algorithm>
#include <limits>

#include "core/errors.hpp"

namespace heartml::baselines {

using heartml::core::ValidationError;

void KnnClassifier::fit(const data::FeatureMatrix& data, const KnnParams& params) {
    data.check_consistent("KnnClassifier::fit");
    if (params.k == 0) throw ValidationError("KnnClassifier::fit: k must be positive");
    if (params.k > data.rows) {
        throw ValidationError("KnnClassifier::fit: k exceeds training row count");
    }
    train_ = data;
    k_ = params.k;
}

std::vector<std::size_t> KnnClassifier::neighbours(std::span<const double> row) const {
    if (k_ == 0) throw ValidationError("KnnClassifier: predict before fit");
    if (row.size() != train_.cols) {
        throw ValidationError("KnnClassifier: row has wrong column count");
    }
    std::vector<std::pair<double, std::size_t>> ranked(train_.rows);
    for (std::size_t r = 0; r < train_.rows; ++r) {
        const double* t = train_.row(r);
        double dist = 0.0;
        for (std::size_t c = 0; c < train_.cols; ++c) {
            const double d = row[c] - t[c];
            dist += d * d;
        }
        ranked[r] = {dist, r};
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> out(k_);
    for (std::size_t i = 0; i < k_; ++i) out[i] = ranked[i].second;
    return out;
}

int KnnClassifier::predict(std::span<const double> row) const {
    const std::vector<std::size_t> nearest = neighbours(row);
    std::size_t votes[2] = {0, 0};
    std::size_t lowest_index[2] = {std::numeric_limits<std::size_t>::max(),
                                   std::numeric_limits<std::size_t>::max()};
    for (std::size_t r : nearest) {
        const std::size_t label = static_cast<std::size_t>(train_.labels[r]);
        ++votes[label];
        lowest_index[label] = std::min(lowest_index[label], r);
    }
    if (votes[1] != votes[0]) return votes[1] > votes[0] ? 1 : 0;
    return lowest_index[1] < lowest_index[0] ? 1 : 0;
}

std::vector<int> KnnClassifier::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

} // namespace heartml::baselines
