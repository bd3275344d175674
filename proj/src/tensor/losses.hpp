// Training losses. Each returns the scalar value together with the gradient
// with respect to its first argument so callers can chain backward passes.
#pragma once

#include <vector>

#include "tensor/tensor.hpp"

namespace heartml::tensor {

struct LossResult {
    double value = 0.0;
    Tensor grad;
};

inline constexpr double kProbabilityClamp = 1e-7;

// Mean binary cross-entropy over the batch. Probabilities are clamped to
// [1e-7, 1 - 1e-7] before the logs; the gradient is taken at the clamped
// value. `probabilities` is (batch) or (batch, 1); labels are 0/1.
LossResult bce_loss(const Tensor& probabilities, const std::vector<int>& labels);

// Squared reconstruction error summed per sample, averaged over the batch:
// value = (1/batch) * sum((xhat - x)^2), grad = 2 (xhat - x) / batch.
LossResult mse_loss(const Tensor& reconstruction, const Tensor& target);

// lambda * sum(|a|) with subgradient sign(a), sign(0) = 0.
LossResult l1_penalty(const Tensor& activations, double lambda);

} // namespace heartml::tensor
