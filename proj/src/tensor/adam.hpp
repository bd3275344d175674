// Adam optimizer with bias-corrected first and second moments.
#pragma once

#include <vector>

#include "tensor/tensor.hpp"

namespace heartml::tensor {

struct AdamParams {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

class Adam {
public:
    explicit Adam(AdamParams params = {});

    // Allocates moment buffers matching the parameter tensors. Must be
    // called once before step().
    void init(const std::vector<Tensor*>& parameters);

    // One update; `gradients` must align one-to-one with the registered
    // parameter list.
    void step(const std::vector<Tensor*>& parameters,
              const std::vector<const Tensor*>& gradients);

    long step_count() const noexcept { return step_; }
    const AdamParams& params() const noexcept { return params_; }

private:
    AdamParams params_;
    long step_ = 0;
    std::vector<Tensor> m_;
    std::vector<Tensor> v_;
};

} // namespace heartml::tensor
