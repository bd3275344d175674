#include "tensor/layers.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace heartml::tensor {

using heartml::core::Rng;
using heartml::core::ValidationError;

Activation activation_from_name(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    throw ValidationError("unknown activation '" + name + "'");
}

std::string activation_name(Activation act) {
    switch (act) {
        case Activation::linear: return "linear";
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
    }
    throw ValidationError("unknown activation value");
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

void apply_activation(Activation act, Tensor& values) {
    switch (act) {
        case Activation::linear:
            return;
        case Activation::relu:
            for (double& v : values.values()) {
                if (v < 0.0) v = 0.0;
            }
            return;
        case Activation::sigmoid:
            for (double& v : values.values()) v = sigmoid(v);
            return;
    }
}

Tensor activation_backward(Activation act, const Tensor& outputs, const Tensor& upstream) {
    if (!outputs.same_shape(upstream)) {
        throw ValidationError("activation_backward: shape mismatch");
    }
    Tensor grad = upstream;
    switch (act) {
        case Activation::linear:
            break;
        case Activation::relu: {
            const double* out = outputs.data();
            double* g = grad.data();
            for (std::size_t i = 0; i < grad.size(); ++i) {
                if (out[i] <= 0.0) g[i] = 0.0;
            }
            break;
        }
        case Activation::sigmoid: {
            const double* out = outputs.data();
            double* g = grad.data();
            for (std::size_t i = 0; i < grad.size(); ++i) {
                g[i] *= out[i] * (1.0 - out[i]);
            }
            break;
        }
    }
    return grad;
}

DenseLayer::DenseLayer(std::size_t in_dim, std::size_t out_dim, Activation act)
    : weights({out_dim, in_dim}), bias({out_dim}), activation(act) {}

void DenseLayer::init_glorot(Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(in_dim() + out_dim()));
    for (double& w : weights.values()) w = rng.uniform(-limit, limit);
    bias.fill(0.0);
}

Tensor dense_forward(const DenseLayer& layer, const Tensor& x, DenseCache* cache) {
    if (x.rank() != 2 || x.dim(1) != layer.in_dim()) {
        throw ValidationError("dense_forward: input " + x.shape_string() +
                              " does not match layer with in_dim " +
                              std::to_string(layer.in_dim()));
    }
    Tensor out = matmul_transposed(x, layer.weights);
    const std::size_t batch = out.dim(0), width = out.dim(1);
    double* op = out.data();
    const double* bp = layer.bias.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t j = 0; j < width; ++j) op[b * width + j] += bp[j];
    }
    apply_activation(layer.activation, out);
    if (cache) {
        cache->input = x;
        cache->output = out;
    }
    return out;
}

DenseGrads dense_backward(const DenseLayer& layer, const DenseCache& cache,
                          const Tensor& upstream) {
    Tensor d_pre = activation_backward(layer.activation, cache.output, upstream);
    DenseGrads grads;
    grads.weights = matmul_transpose_a(d_pre, cache.input); // (out, in)
    grads.bias = Tensor({layer.out_dim()});
    const std::size_t batch = d_pre.dim(0), width = d_pre.dim(1);
    const double* dp = d_pre.data();
    double* gb = grads.bias.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t j = 0; j < width; ++j) gb[j] += dp[b * width + j];
    }
    grads.input = matmul(d_pre, layer.weights); // (batch, in)
    return grads;
}

Conv2DLayer::Conv2DLayer(std::size_t in_channels, std::size_t filters, std::size_t kh,
                         std::size_t kw, std::size_t stride_, Activation act)
    : kernels({filters, in_channels, kh, kw}), bias({filters}), stride(stride_),
      activation(act) {
    if (stride == 0) throw ValidationError("Conv2DLayer: stride must be positive");
}

void Conv2DLayer::init_glorot(Rng& rng) {
    const std::size_t kh = kernels.dim(2), kw = kernels.dim(3);
    const std::size_t fan_in = in_channels() * kh * kw;
    const std::size_t fan_out = filters() * kh * kw;
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& w : kernels.values()) w = rng.uniform(-limit, limit);
    bias.fill(0.0);
}

namespace {

void check_conv_input(const Conv2DLayer& layer, const Tensor& x) {
    if (x.rank() != 4) {
        throw ValidationError("conv2d: input must be (batch, channels, h, w), got " +
                              x.shape_string());
    }
    if (x.dim(1) != layer.in_channels()) {
        throw ValidationError("conv2d: input has " + std::to_string(x.dim(1)) +
                              " channels, layer expects " +
                              std::to_string(layer.in_channels()));
    }
    if (x.dim(2) < layer.kernels.dim(2) || x.dim(3) < layer.kernels.dim(3)) {
        throw ValidationError("conv2d: kernel " + layer.kernels.shape_string() +
                              " does not fit input " + x.shape_string());
    }
}

} // namespace

Tensor conv2d_forward(const Conv2DLayer& layer, const Tensor& x, Conv2DCache* cache) {
    check_conv_input(layer, x);
    const std::size_t batch = x.dim(0), channels = x.dim(1), h = x.dim(2), w = x.dim(3);
    const std::size_t filters = layer.filters();
    const std::size_t kh = layer.kernels.dim(2), kw = layer.kernels.dim(3);
    const std::size_t s = layer.stride;
    const std::size_t oh = (h - kh) / s + 1, ow = (w - kw) / s + 1;

    Tensor out({batch, filters, oh, ow});
    const double* xp = x.data();
    const double* kp = layer.kernels.data();
    double* op = out.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t f = 0; f < filters; ++f) {
            const double bias = layer.bias[f];
            for (std::size_t i = 0; i < oh; ++i) {
                for (std::size_t j = 0; j < ow; ++j) {
                    double acc = bias;
                    for (std::size_t c = 0; c < channels; ++c) {
                        const double* xbase =
                            xp + ((b * channels + c) * h + i * s) * w + j * s;
                        const double* kbase = kp + ((f * channels + c) * kh) * kw;
                        for (std::size_t u = 0; u < kh; ++u) {
                            const double* xrow = xbase + u * w;
                            const double* krow = kbase + u * kw;
                            for (std::size_t v = 0; v < kw; ++v) acc += xrow[v] * krow[v];
                        }
                    }
                    op[((b * filters + f) * oh + i) * ow + j] = acc;
                }
            }
        }
    }
    apply_activation(layer.activation, out);
    if (cache) {
        cache->input = x;
        cache->output = out;
    }
    return out;
}

Conv2DGrads conv2d_backward(const Conv2DLayer& layer, const Conv2DCache& cache,
                            const Tensor& upstream) {
    const Tensor& x = cache.input;
    Tensor d_pre = activation_backward(layer.activation, cache.output, upstream);

    const std::size_t batch = x.dim(0), channels = x.dim(1), h = x.dim(2), w = x.dim(3);
    const std::size_t filters = layer.filters();
    const std::size_t kh = layer.kernels.dim(2), kw = layer.kernels.dim(3);
    const std::size_t s = layer.stride;
    const std::size_t oh = d_pre.dim(2), ow = d_pre.dim(3);

    Conv2DGrads grads;
    grads.kernels = Tensor({filters, channels, kh, kw});
    grads.bias = Tensor({filters});
    grads.input = Tensor({batch, channels, h, w});

    const double* xp = x.data();
    const double* kp = layer.kernels.data();
    const double* dp = d_pre.data();
    double* gk = grads.kernels.data();
    double* gb = grads.bias.data();
    double* gx = grads.input.data();

    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t f = 0; f < filters; ++f) {
            for (std::size_t i = 0; i < oh; ++i) {
                for (std::size_t j = 0; j < ow; ++j) {
                    const double g = dp[((b * filters + f) * oh + i) * ow + j];
                    gb[f] += g;
                    for (std::size_t c = 0; c < channels; ++c) {
                        const double* xbase =
                            xp + ((b * channels + c) * h + i * s) * w + j * s;
                        double* gxbase =
                            gx + ((b * channels + c) * h + i * s) * w + j * s;
                        const double* kbase = kp + ((f * channels + c) * kh) * kw;
                        double* gkbase = gk + ((f * channels + c) * kh) * kw;
                        for (std::size_t u = 0; u < kh; ++u) {
                            for (std::size_t v = 0; v < kw; ++v) {
                                gkbase[u * kw + v] += g * xbase[u * w + v];
                                gxbase[u * w + v] += g * kbase[u * kw + v];
                            }
                        }
                    }
                }
            }
        }
    }
    return grads;
}

Tensor maxpool2d(const Tensor& x, std::size_t pool_h, std::size_t pool_w,
                 MaxPoolCache* cache) {
    if (x.rank() != 4) {
        throw ValidationError("maxpool2d: input must be (batch, channels, h, w), got " +
                              x.shape_string());
    }
    if (pool_h == 0 || pool_w == 0) {
        throw ValidationError("maxpool2d: window must be positive");
    }
    const std::size_t batch = x.dim(0), channels = x.dim(1), h = x.dim(2), w = x.dim(3);
    if (h % pool_h != 0 || w % pool_w != 0) {
        throw ValidationError("maxpool2d: input " + x.shape_string() +
                              " is not an exact multiple of window " +
                              std::to_string(pool_h) + "x" + std::to_string(pool_w));
    }
    const std::size_t oh = h / pool_h, ow = w / pool_w;
    Tensor out({batch, channels, oh, ow});
    if (cache) {
        cache->in_shape = x.shape();
        cache->argmax.assign(out.size(), 0);
    }
    const double* xp = x.data();
    double* op = out.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t c = 0; c < channels; ++c) {
            const std::size_t plane = (b * channels + c) * h * w;
            for (std::size_t i = 0; i < oh; ++i) {
                for (std::size_t j = 0; j < ow; ++j) {
                    std::size_t best_index = plane + (i * pool_h) * w + j * pool_w;
                    double best = xp[best_index];
                    for (std::size_t u = 0; u < pool_h; ++u) {
                        for (std::size_t v = 0; v < pool_w; ++v) {
                            const std::size_t idx =
                                plane + (i * pool_h + u) * w + (j * pool_w + v);
                            if (xp[idx] > best) {
                                best = xp[idx];
                                best_index = idx;
                            }
                        }
                    }
                    const std::size_t out_idx = ((b * channels + c) * oh + i) * ow + j;
                    op[out_idx] = best;
                    if (cache) cache->argmax[out_idx] = best_index;
                }
            }
        }
    }
    return out;
}

Tensor maxpool2d_backward(const MaxPoolCache& cache, const Tensor& upstream) {
    if (upstream.size() != cache.argmax.size()) {
        throw ValidationError("maxpool2d_backward: upstream does not match cache");
    }
    Tensor grad(cache.in_shape);
    double* gp = grad.data();
    const double* up = upstream.data();
    for (std::size_t i = 0; i < cache.argmax.size(); ++i) {
        gp[cache.argmax[i]] += up[i];
    }
    return grad;
}

Tensor flatten(const Tensor& x) {
    if (x.rank() != 4) {
        throw ValidationError("flatten: input must be rank 4, got " + x.shape_string());
    }
    return x.reshaped({x.dim(0), x.dim(1) * x.dim(2) * x.dim(3)});
}

} // namespace heartml::tensor
