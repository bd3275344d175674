#include "baselines/gaussian_nb.hpp"

#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace heartml::baselines {

using heartml::core::ValidationError;

void GaussianNb::fit(const data::FeatureMatrix& data) {
    data.check_consistent("GaussianNb::fit");
    if (data.rows == 0) throw ValidationError("GaussianNb::fit: empty dataset");

    std::array<std::size_t, 2> counts{0, 0};
    for (int label : data.labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("GaussianNb::fit: labels must be 0 or 1");
        }
        ++counts[static_cast<std::size_t>(label)];
    }
    if (counts[0] == 0 || counts[1] == 0) {
        throw ValidationError("GaussianNb::fit: both classes must be present");
    }

    cols_ = data.cols;
    for (int cls = 0; cls < 2; ++cls) {
        const std::size_t n = counts[static_cast<std::size_t>(cls)];
        priors_[static_cast<std::size_t>(cls)] =
            static_cast<double>(n) / static_cast<double>(data.rows);
        auto& mean = means_[static_cast<std::size_t>(cls)];
        auto& var = variances_[static_cast<std::size_t>(cls)];
        mean.assign(cols_, 0.0);
        var.assign(cols_, 0.0);
        for (std::size_t r = 0; r < data.rows; ++r) {
            if (data.labels[r] != cls) continue;
            for (std::size_t c = 0; c < cols_; ++c) mean[c] += data.at(r, c);
        }
        for (double& m : mean) m /= static_cast<double>(n);
        for (std::size_t r = 0; r < data.rows; ++r) {
            if (data.labels[r] != cls) continue;
            for (std::size_t c = 0; c < cols_; ++c) {
                const double d = data.at(r, c) - mean[c];
                var[c] += d * d;
            }
        }
        for (double& v : var) {
            v /= static_cast<double>(n);
            if (v < kGnbVarianceFloor) v = kGnbVarianceFloor;
        }
    }
}

std::array<double, 2> GaussianNb::log_posteriors(std::span<const double> row) const {
    if (cols_ == 0) throw ValidationError("GaussianNb: predict before fit");
    if (row.size() != cols_) {
        throw ValidationError("GaussianNb: row has wrong column count");
    }
    std::array<double, 2> scores{};
    for (std::size_t cls = 0; cls < 2; ++cls) {
        double score = std::log(priors_[cls]);
        const auto& mean = means_[cls];
        const auto& var = variances_[cls];
        for (std::size_t c = 0; c < cols_; ++c) {
            const double d = row[c] - mean[c];
            score += -0.5 * std::log(2.0 * std::numbers::pi * var[c]) -
                     d * d / (2.0 * var[c]);
        }
        scores[cls] = score;
    }
    return scores;
}

std::array<double, 2> GaussianNb::posteriors(std::span<const double> row) const {
    const std::array<double, 2> scores = log_posteriors(row);
    const double shift = std::max(scores[0], scores[1]);
    const double e0 = std::exp(scores[0] - shift);
    const double e1 = std::exp(scores[1] - shift);
    return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

int GaussianNb::predict(std::span<const double> row) const {
    const std::array<double, 2> scores = log_posteriors(row);
    return scores[1] > scores[0] ? 1 : 0;
}

std::vector<int> GaussianNb::predict_all(const data::FeatureMatrix& data) const {
    std::vector<int> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) {
        out[r] = predict({data.row(r), data.cols});
    }
    return out;
}

const std::vector<double>& GaussianNb::means(int label) const {
    return means_[static_cast<std::size_t>(label)];
}
const std::vector<double>& GaussianNb::variances(int label) const {
    return variances_[static_cast<std::size_t>(label)];
}
double GaussianNb::prior(int label) const {
    return priors_[static_cast<std::size_t>(label)];
}

} // namespace heartml::baselines
