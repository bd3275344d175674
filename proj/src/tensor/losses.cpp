#include "tensor/losses.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace heartml::tensor {

using heartml::core::ValidationError;

LossResult bce_loss(const Tensor& probabilities, const std::vector<int>& labels) {
    const bool flat = probabilities.rank() == 1;
    const bool column = probabilities.rank() == 2 && probabilities.dim(1) == 1;
    if (!flat && !column) {
        throw ValidationError("bce_loss: probabilities must be (batch) or (batch, 1), got " +
                              probabilities.shape_string());
    }
    const std::size_t batch = probabilities.dim(0);
    if (batch == 0 || labels.size() != batch) {
        throw ValidationError("bce_loss: label count does not match batch size");
    }
    for (int y : labels) {
        if (y != 0 && y != 1) throw ValidationError("bce_loss: labels must be 0 or 1");
    }
    LossResult result;
    result.grad = Tensor(probabilities.shape());
    const double* p = probabilities.data();
    double* g = result.grad.data();
    const double inv_batch = 1.0 / static_cast<double>(batch);
    double total = 0.0;
    for (std::size_t i = 0; i < batch; ++i) {
        double pc = p[i];
        if (pc < kProbabilityClamp) pc = kProbabilityClamp;
        if (pc > 1.0 - kProbabilityClamp) pc = 1.0 - kProbabilityClamp;
        const double y = static_cast<double>(labels[i]);
        total += -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
        g[i] = (pc - y) / (pc * (1.0 - pc)) * inv_batch;
    }
    result.value = total * inv_batch;
    return result;
}

LossResult mse_loss(const Tensor& reconstruction, const Tensor& target) {
    if (!reconstruction.same_shape(target)) {
        throw ValidationError("mse_loss: shape mismatch, " + reconstruction.shape_string() +
                              " vs " + target.shape_string());
    }
    if (reconstruction.rank() < 1 || reconstruction.dim(0) == 0) {
        throw ValidationError("mse_loss: empty batch");
    }
    const std::size_t batch = reconstruction.dim(0);
    const double inv_batch = 1.0 / static_cast<double>(batch);
    LossResult result;
    result.grad = Tensor(reconstruction.shape());
    const double* xh = reconstruction.data();
    const double* x = target.data();
    double* g = result.grad.data();
    double total = 0.0;
    for (std::size_t i = 0; i < reconstruction.size(); ++i) {
        const double diff = xh[i] - x[i];
        total += diff * diff;
        g[i] = 2.0 * diff * inv_batch;
    }
    result.value = total * inv_batch;
    return result;
}

LossResult l1_penalty(const Tensor& activations, double lambda) {
    if (lambda < 0.0) {
        throw ValidationError("l1_penalty: lambda must be non-negative");
    }
    LossResult result;
    result.grad = Tensor(activations.shape());
    const double* a = activations.data();
    double* g = result.grad.data();
    double total = 0.0;
    for (std::size_t i = 0; i < activations.size(); ++i) {
        total += std::fabs(a[i]);
        g[i] = a[i] > 0.0 ? lambda : (a[i] < 0.0 ? -lambda : 0.0);
    }
    result.value = lambda * total;
    return result;
}

} // namespace heartml::tensor
