// Shared mini-batch plumbing for the gradient-trained models.
#pragma once

#include <span>
#include <vector>

#include "core/rng.hpp"
#include "data/features.hpp"
#include "tensor/tensor.hpp"

namespace heartml::models {

inline tensor::Tensor gather_rows(const data::FeatureMatrix& matrix,
                                  std::span<const std::size_t> indices) {
    tensor::Tensor batch({indices.size(), matrix.cols});
    double* out = batch.data();
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const double* row = matrix.row(indices[i]);
        for (std::size_t c = 0; c < matrix.cols; ++c) out[i * matrix.cols + c] = row[c];
    }
    return batch;
}

inline std::vector<int> gather_labels(const data::FeatureMatrix& matrix,
                                      std::span<const std::size_t> indices) {
    std::vector<int> labels(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        labels[i] = matrix.labels[indices[i]];
    }
    return labels;
}

// Shuffled sample order carved into consecutive batches; the tail batch may
// be smaller.
inline std::vector<std::vector<std::size_t>> make_batches(std::size_t n,
                                                          std::size_t batch_size,
                                                          core::Rng& rng) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t start = 0; start < n; start += batch_size) {
        const std::size_t end = std::min(n, start + batch_size);
        batches.emplace_back(order.begin() + static_cast<long>(start),
                             order.begin() + static_cast<long>(end));
    }
    return batches;
}

// Threshold at 0.5, inclusive on the positive side.
inline int probability_to_label(double p) { return p >= 0.5 ? 1 : 0; }

inline double binary_accuracy(std::span<const double> probabilities,
                              std::span<const int> labels) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probability_to_label(probabilities[i]) == labels[i]) ++correct;
    }
    return probabilities.empty()
               ? 0.0
               : static_cast<double>(correct) / static_cast<double>(probabilities.size());
}

struct EpochStats {
    double total = 0.0;
    double bce = 0.0;
    double mse = 0.0;
    double l1 = 0.0;
    double accuracy = 0.0;
};

} // namespace heartml::models
