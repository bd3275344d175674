#include "tensor/adam.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace heartml::tensor {

using heartml::core::ValidationError;

Adam::Adam(AdamParams params) : params_(params) {
    if (params_.learning_rate <= 0.0) {
        throw ValidationError("Adam: learning rate must be positive");
    }
    if (params_.beta1 < 0.0 || params_.beta1 >= 1.0 || params_.beta2 < 0.0 ||
        params_.beta2 >= 1.0) {
        throw ValidationError("Adam: betas must lie in [0, 1)");
    }
    if (params_.epsilon <= 0.0) {
        throw ValidationError("Adam: epsilon must be positive");
    }
}

void Adam::init(const std::vector<Tensor*>& parameters) {
    m_.clear();
    v_.clear();
    m_.reserve(parameters.size());
    v_.reserve(parameters.size());
    for (const Tensor* p : parameters) {
        m_.emplace_back(p->shape());
        v_.emplace_back(p->shape());
    }
    step_ = 0;
}

void Adam::step(const std::vector<Tensor*>& parameters,
                const std::vector<const Tensor*>& gradients) {
    if (parameters.size() != m_.size()) {
        throw ValidationError("Adam::step: parameter list does not match init()");
    }
    if (gradients.size() != parameters.size()) {
        throw ValidationError("Adam::step: gradient list does not match parameters");
    }
    ++step_;
    const double b1 = params_.beta1, b2 = params_.beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_));
    for (std::size_t k = 0; k < parameters.size(); ++k) {
        Tensor& param = *parameters[k];
        const Tensor& grad = *gradients[k];
        if (!param.same_shape(m_[k]) || !param.same_shape(grad)) {
            throw ValidationError("Adam::step: tensor shape changed since init()");
        }
        double* p = param.data();
        const double* g = grad.data();
        double* m = m_[k].data();
        double* v = v_[k].data();
        for (std::size_t i = 0; i < param.size(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            const double m_hat = m[i] / correction1;
            const double v_hat = v[i] / correction2;
            p[i] -= params_.learning_rate * m_hat / (std::sqrt(v_hat) + params_.epsilon);
        }
    }
}

} // namespace heartml::tensor
