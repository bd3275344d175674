// Central finite-difference oracle for backward passes. Analytic gradients
// must match (f(x+h) - f(x-h)) / 2h within a relative tolerance on every
// coordinate.
#pragma once

#include <cmath>
#include <functional>
#include <string>

#include <doctest.h>

#include "tensor/tensor.hpp"

namespace heartml::testing {

inline constexpr double kFdStep = 1e-6;
inline constexpr double kFdTolerance = 1e-5;

// loss(params) evaluates the scalar objective at the current parameter
// values; analytic holds d loss / d params.
inline void check_gradient(tensor::Tensor& params, const tensor::Tensor& analytic,
                           const std::function<double()>& loss,
                           const std::string& label) {
    REQUIRE(params.size() == analytic.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + kFdStep;
        const double up = loss();
        params[i] = saved - kFdStep;
        const double down = loss();
        params[i] = saved;
        const double numeric = (up - down) / (2.0 * kFdStep);
        const double scale = std::max({std::abs(numeric), std::abs(analytic[i]), 1.0});
        const double relative = std::abs(numeric - analytic[i]) / scale;
        INFO(label, " coordinate ", i, ": analytic ", analytic[i], " numeric ",
             numeric);
        CHECK(relative < kFdTolerance);
    }
}

} // namespace heartml::testing
