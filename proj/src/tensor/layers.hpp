// Layer primitives: dense, 2-D convolution (cross-correlation, valid
// padding) and max pooling, each with an explicit backward pass. Forward
// passes take a cache out-parameter that backward consumes; batches are the
// leading dimension everywhere.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "tensor/tensor.hpp"

namespace heartml::tensor {

enum class Activation { linear, relu, sigmoid };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation act);

// Numerically stable logistic function.
double sigmoid(double z);

void apply_activation(Activation act, Tensor& values);
// dPre = dOut * act'(pre), computed from the stored outputs.
Tensor activation_backward(Activation act, const Tensor& outputs, const Tensor& upstream);

struct DenseLayer {
    Tensor weights; // (out_dim, in_dim)
    Tensor bias;    // (out_dim)
    Activation activation = Activation::linear;

    DenseLayer() = default;
    DenseLayer(std::size_t in_dim, std::size_t out_dim, Activation act);

    std::size_t in_dim() const { return weights.dim(1); }
    std::size_t out_dim() const { return weights.dim(0); }

    void init_glorot(heartml::core::Rng& rng);
};

struct DenseCache {
    Tensor input;  // (batch, in_dim)
    Tensor output; // (batch, out_dim), post-activation
};

struct DenseGrads {
    Tensor weights;
    Tensor bias;
    Tensor input; // gradient with respect to the layer input
};

// x: (batch, in_dim) -> (batch, out_dim)
Tensor dense_forward(const DenseLayer& layer, const Tensor& x, DenseCache* cache = nullptr);
DenseGrads dense_backward(const DenseLayer& layer, const DenseCache& cache,
                          const Tensor& upstream);

struct Conv2DLayer {
    Tensor kernels; // (filters, in_channels, kh, kw)
    Tensor bias;    // (filters)
    std::size_t stride = 1;
    Activation activation = Activation::linear;

    Conv2DLayer() = default;
    Conv2DLayer(std::size_t in_channels, std::size_t filters, std::size_t kh,
                std::size_t kw, std::size_t stride, Activation act);

    std::size_t filters() const { return kernels.dim(0); }
    std::size_t in_channels() const { return kernels.dim(1); }

    void init_glorot(heartml::core::Rng& rng);
};

struct Conv2DCache {
    Tensor input;  // (batch, c, h, w)
    Tensor output; // (batch, f, oh, ow), post-activation
};

struct Conv2DGrads {
    Tensor kernels;
    Tensor bias;
    Tensor input;
};

// x: (batch, c, h, w) -> (batch, filters, oh, ow) with
// oh = (h - kh) / stride + 1. Throws when the kernel does not fit.
Tensor conv2d_forward(const Conv2DLayer& layer, const Tensor& x, Conv2DCache* cache = nullptr);
Conv2DGrads conv2d_backward(const Conv2DLayer& layer, const Conv2DCache& cache,
                            const Tensor& upstream);

struct MaxPoolCache {
    std::vector<std::size_t> in_shape;
    std::vector<std::size_t> argmax; // flat input index per output cell
};

// Non-overlapping pooling; spatial dims must be exact multiples of the
// window, ties resolved to the first occurrence in row-major order.
Tensor maxpool2d(const Tensor& x, std::size_t pool_h, std::size_t pool_w,
                 MaxPoolCache* cache = nullptr);
Tensor maxpool2d_backward(const MaxPoolCache& cache, const Tensor& upstream);

// (batch, c, h, w) -> (batch, c*h*w)
Tensor flatten(const Tensor& x);

} // namespace heartml::tensor
