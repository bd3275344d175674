#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "gradient_check.hpp"
#include "tensor/adam.hpp"
#include "tensor/checkpoint.hpp"
#include "tensor/layers.hpp"
#include "tensor/losses.hpp"
#include "tensor/tensor.hpp"

using namespace heartml;
using heartml::testing::check_gradient;
using tensor::Tensor;

namespace {

Tensor random_tensor(std::vector<std::size_t> shape, core::Rng& rng, double lo = -1.0,
                     double hi = 1.0) {
    Tensor t(std::move(shape));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
    return t;
}

// Scalar objective used by the layer gradient checks: weighted sum of the
// forward outputs, with fixed weights so the upstream gradient is constant.
double weighted_sum(const Tensor& out, const Tensor& weights) {
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) total += out[i] * weights[i];
    return total;
}

} // namespace

TEST_CASE("tensor shape accounting and reshape") {
    Tensor t({2, 3}, 1.5);
    CHECK(t.size() == 6);
    CHECK(t.dim(0) == 2);
    CHECK(t.at(1, 2) == 1.5);
    Tensor r = t.reshaped({3, 2});
    CHECK(r.at(2, 1) == 1.5);
    CHECK_THROWS_AS((void)t.reshaped({4, 2}), core::ValidationError);
    CHECK_THROWS_AS(Tensor({0, 3}), core::ValidationError);
}

TEST_CASE("ensure_finite flags NaN and infinity") {
    Tensor t({2, 2}, 0.0);
    t.ensure_finite("ok");
    t[3] = std::nan("");
    CHECK_FALSE(t.all_finite());
    CHECK_THROWS_AS(t.ensure_finite("bad"), core::NumericError);
}

TEST_CASE("matmul matches a brute-force triple loop") {
    core::Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 1 + rng.below(5), k = 1 + rng.below(5),
                          n = 1 + rng.below(5);
        Tensor a = random_tensor({m, k}, rng);
        Tensor b = random_tensor({k, n}, rng);
        Tensor c = tensor::matmul(a, b);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double expect = 0.0;
                for (std::size_t t = 0; t < k; ++t) expect += a.at(i, t) * b.at(t, j);
                CHECK(c.at(i, j) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("matmul_transposed and matmul_transpose_a agree with matmul") {
    core::Rng rng(32);
    Tensor a = random_tensor({4, 3}, rng);
    Tensor b = random_tensor({5, 3}, rng); // b^T is (3, 5)
    Tensor bt({3, 5});
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j) bt.at(j, i) = b.at(i, j);
    Tensor direct = tensor::matmul(a, bt);
    Tensor fused = tensor::matmul_transposed(a, b);
    REQUIRE(direct.same_shape(fused));
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(direct[i] == doctest::Approx(fused[i]).epsilon(1e-12));

    Tensor c = random_tensor({3, 4}, rng); // c^T is (4, 3)
    Tensor ct({4, 3});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) ct.at(j, i) = c.at(i, j);
    Tensor d = random_tensor({3, 6}, rng);
    Tensor direct2 = tensor::matmul(ct, d);
    Tensor fused2 = tensor::matmul_transpose_a(c, d);
    REQUIRE(direct2.same_shape(fused2));
    for (std::size_t i = 0; i < direct2.size(); ++i)
        CHECK(direct2[i] == doctest::Approx(fused2[i]).epsilon(1e-12));
}

TEST_CASE("matmul validates inner dimensions") {
    Tensor a({2, 3});
    Tensor b({4, 2});
    CHECK_THROWS_AS((void)tensor::matmul(a, b), core::ValidationError);
}

TEST_CASE("sigmoid is stable at extreme logits") {
    CHECK(tensor::sigmoid(1000.0) == doctest::Approx(1.0));
    CHECK(tensor::sigmoid(-1000.0) == doctest::Approx(0.0));
    CHECK(tensor::sigmoid(0.0) == doctest::Approx(0.5));
}

TEST_CASE("dense layer gradients match finite differences") {
    core::Rng rng(1001);
    const tensor::Activation acts[] = {tensor::Activation::linear,
                                       tensor::Activation::relu,
                                       tensor::Activation::sigmoid};
    int instances = 0;
    for (int trial = 0; trial < 12; ++trial) {
        for (tensor::Activation act : acts) {
            const std::size_t batch = 1 + rng.below(4);
            const std::size_t in_dim = 1 + rng.below(5);
            const std::size_t out_dim = 1 + rng.below(5);
            tensor::DenseLayer layer(in_dim, out_dim, act);
            layer.init_glorot(rng);
            Tensor x = random_tensor({batch, in_dim}, rng);
            Tensor up = random_tensor({batch, out_dim}, rng);

            auto loss = [&]() {
                return weighted_sum(tensor::dense_forward(layer, x), up);
            };
            tensor::DenseCache cache;
            tensor::dense_forward(layer, x, &cache);
            tensor::DenseGrads grads = tensor::dense_backward(layer, cache, up);

            check_gradient(layer.weights, grads.weights, loss, "dense weights");
            check_gradient(layer.bias, grads.bias, loss, "dense bias");
            check_gradient(x, grads.input, loss, "dense input");
            ++instances;
        }
    }
    CHECK(instances == 36);
}

TEST_CASE("conv2d forward matches a hand-computed example") {
    tensor::Conv2DLayer layer(1, 1, 2, 2, 1, tensor::Activation::linear);
    layer.kernels = Tensor::from_data({1, 1, 2, 2}, {1.0, 0.0, 0.0, 1.0});
    layer.bias = Tensor::from_data({1}, {0.5});
    Tensor x = Tensor::from_data({1, 1, 3, 3},
                                 {1, 2, 3,
                                  4, 5, 6,
                                  7, 8, 9});
    Tensor out = tensor::conv2d_forward(layer, x);
    REQUIRE(out.shape() == std::vector<std::size_t>{1, 1, 2, 2});
    CHECK(out.at(0, 0, 0, 0) == doctest::Approx(1 + 5 + 0.5));
    CHECK(out.at(0, 0, 0, 1) == doctest::Approx(2 + 6 + 0.5));
    CHECK(out.at(0, 0, 1, 0) == doctest::Approx(4 + 8 + 0.5));
    CHECK(out.at(0, 0, 1, 1) == doctest::Approx(5 + 9 + 0.5));
}

TEST_CASE("conv2d gradients match finite differences") {
    core::Rng rng(1002);
    int instances = 0;
    for (int trial = 0; trial < 16; ++trial) {
        const std::size_t batch = 1 + rng.below(2);
        const std::size_t channels = 1 + rng.below(2);
        const std::size_t filters = 1 + rng.below(3);
        const std::size_t kh = 1 + rng.below(2);
        const std::size_t kw = 1 + rng.below(2);
        const std::size_t stride = 1 + rng.below(2);
        const std::size_t h = kh + stride * rng.below(3);
        const std::size_t w = kw + stride * rng.below(3);
        tensor::Conv2DLayer layer(channels, filters, kh, kw, stride,
                                  trial % 2 == 0 ? tensor::Activation::relu
                                                 : tensor::Activation::linear);
        layer.init_glorot(rng);
        Tensor x = random_tensor({batch, channels, h, w}, rng);
        const std::size_t oh = (h - kh) / stride + 1;
        const std::size_t ow = (w - kw) / stride + 1;
        Tensor up = random_tensor({batch, filters, oh, ow}, rng);

        auto loss = [&]() {
            return weighted_sum(tensor::conv2d_forward(layer, x), up);
        };
        tensor::Conv2DCache cache;
        tensor::conv2d_forward(layer, x, &cache);
        tensor::Conv2DGrads grads = tensor::conv2d_backward(layer, cache, up);

        check_gradient(layer.kernels, grads.kernels, loss, "conv kernels");
        check_gradient(layer.bias, grads.bias, loss, "conv bias");
        check_gradient(x, grads.input, loss, "conv input");
        ++instances;
    }
    CHECK(instances == 16);
}

TEST_CASE("conv2d rejects kernels larger than the input") {
    tensor::Conv2DLayer layer(1, 1, 4, 4, 1, tensor::Activation::linear);
    Tensor x({1, 1, 3, 3});
    CHECK_THROWS_AS((void)tensor::conv2d_forward(layer, x), core::ValidationError);
}

TEST_CASE("maxpool picks maxima and routes gradients to them") {
    Tensor x = Tensor::from_data({1, 1, 2, 4},
                                 {1, 3, 2, 2,
                                  0, 1, 5, 4});
    tensor::MaxPoolCache cache;
    Tensor out = tensor::maxpool2d(x, 2, 2, &cache);
    REQUIRE(out.shape() == std::vector<std::size_t>{1, 1, 1, 2});
    CHECK(out.at(0, 0, 0, 0) == 3);
    CHECK(out.at(0, 0, 0, 1) == 5);
    Tensor up = Tensor::from_data({1, 1, 1, 2}, {10.0, 20.0});
    Tensor dx = tensor::maxpool2d_backward(cache, up);
    CHECK(dx.at(0, 0, 0, 1) == 10.0);
    CHECK(dx.at(0, 0, 1, 2) == 20.0);
    CHECK(dx.at(0, 0, 0, 0) == 0.0);
}

TEST_CASE("maxpool tie resolves to the first occurrence") {
    Tensor x = Tensor::from_data({1, 1, 2, 2}, {7, 7, 7, 7});
    tensor::MaxPoolCache cache;
    Tensor out = tensor::maxpool2d(x, 2, 2, &cache);
    CHECK(out[0] == 7);
    CHECK(cache.argmax[0] == 0);
}

TEST_CASE("maxpool requires exact window multiples") {
    Tensor x({1, 1, 3, 4});
    CHECK_THROWS_AS((void)tensor::maxpool2d(x, 2, 2), core::ValidationError);
}

TEST_CASE("maxpool gradients match finite differences") {
    core::Rng rng(1003);
    int instances = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t batch = 1 + rng.below(2);
        const std::size_t channels = 1 + rng.below(2);
        const std::size_t ph = 1 + rng.below(2), pw = 1 + rng.below(2);
        const std::size_t h = ph * (1 + rng.below(3));
        const std::size_t w = pw * (1 + rng.below(3));
        // Distinct values so the argmax is stable under the FD perturbation.
        Tensor x({batch, channels, h, w});
        std::vector<std::size_t> order(x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = static_cast<double>(order[i]) * 0.37;
        Tensor up = random_tensor({batch, channels, h / ph, w / pw}, rng);

        auto loss = [&]() { return weighted_sum(tensor::maxpool2d(x, ph, pw), up); };
        tensor::MaxPoolCache cache;
        tensor::maxpool2d(x, ph, pw, &cache);
        Tensor dx = tensor::maxpool2d_backward(cache, up);

        check_gradient(x, dx, loss, "maxpool input");
        ++instances;
    }
    CHECK(instances == 20);
}

TEST_CASE("bce matches the frozen reference value and finite differences") {
    // -ln(0.9) for a single confident correct prediction.
    Tensor p = Tensor::from_data({1}, {0.9});
    tensor::LossResult r = tensor::bce_loss(p, {1});
    CHECK(r.value == doctest::Approx(0.105360515657826).epsilon(1e-9));

    core::Rng rng(1004);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t batch = 1 + rng.below(6);
        Tensor probs({batch});
        std::vector<int> labels(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            probs[i] = rng.uniform(0.05, 0.95);
            labels[i] = rng.below(2) == 0 ? 0 : 1;
        }
        auto loss = [&]() { return tensor::bce_loss(probs, labels).value; };
        tensor::LossResult result = tensor::bce_loss(probs, labels);
        check_gradient(probs, result.grad, loss, "bce input");
    }
}

TEST_CASE("bce validates labels and shapes") {
    Tensor p = Tensor::from_data({2}, {0.5, 0.5});
    CHECK_THROWS_AS((void)tensor::bce_loss(p, {0, 2}), core::ValidationError);
    CHECK_THROWS_AS((void)tensor::bce_loss(p, {0}), core::ValidationError);
}

TEST_CASE("bce clamps probabilities instead of producing infinities") {
    Tensor p = Tensor::from_data({2}, {0.0, 1.0});
    tensor::LossResult r = tensor::bce_loss(p, {1, 0});
    CHECK(std::isfinite(r.value));
    CHECK(r.value == doctest::Approx(-std::log(1e-7)).epsilon(1e-6));
}

TEST_CASE("mse matches the definition and finite differences") {
    Tensor xhat = Tensor::from_data({2, 2}, {1, 2, 3, 4});
    Tensor x = Tensor::from_data({2, 2}, {0, 2, 3, 2});
    // ((1)^2 + 0 + 0 + (2)^2) / 2 batches
    tensor::LossResult r = tensor::mse_loss(xhat, x);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-12));

    core::Rng rng(1005);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t batch = 1 + rng.below(4);
        const std::size_t width = 1 + rng.below(5);
        Tensor a = random_tensor({batch, width}, rng);
        Tensor b = random_tensor({batch, width}, rng);
        auto loss = [&]() { return tensor::mse_loss(a, b).value; };
        tensor::LossResult result = tensor::mse_loss(a, b);
        check_gradient(a, result.grad, loss, "mse input");
    }
}

TEST_CASE("l1 penalty uses sign subgradient with sign(0) = 0") {
    Tensor a = Tensor::from_data({4}, {-2.0, 0.0, 0.5, 3.0});
    tensor::LossResult r = tensor::l1_penalty(a, 0.1);
    CHECK(r.value == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(r.grad[0] == -0.1);
    CHECK(r.grad[1] == 0.0);
    CHECK(r.grad[2] == 0.1);
    CHECK(r.grad[3] == 0.1);
    CHECK_THROWS_AS((void)tensor::l1_penalty(a, -1.0), core::ValidationError);

    core::Rng rng(1006);
    for (int trial = 0; trial < 25; ++trial) {
        Tensor x = random_tensor({1 + rng.below(6)}, rng);
        // Keep coordinates away from the kink so FD is valid.
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::abs(x[i]) < 0.05) x[i] = 0.1;
        }
        auto loss = [&]() { return tensor::l1_penalty(x, 0.3).value; };
        tensor::LossResult result = tensor::l1_penalty(x, 0.3);
        check_gradient(x, result.grad, loss, "l1 input");
    }
}

TEST_CASE("adam converges on a quadratic bowl") {
    Tensor w = Tensor::from_data({1}, {-4.0});
    tensor::Adam adam({0.05, 0.9, 0.999, 1e-8});
    std::vector<Tensor*> params = {&w};
    adam.init(params);
    for (int i = 0; i < 400; ++i) {
        Tensor g = Tensor::from_data({1}, {2.0 * (w[0] - 3.0)});
        std::vector<const Tensor*> grads = {&g};
        adam.step(params, grads);
    }
    CHECK(std::abs(w[0] - 3.0) < 0.05);
    CHECK(adam.step_count() == 400);
}

TEST_CASE("adam first step moves by roughly the learning rate") {
    Tensor w = Tensor::from_data({1}, {0.0});
    tensor::Adam adam({0.001, 0.9, 0.999, 1e-8});
    std::vector<Tensor*> params = {&w};
    adam.init(params);
    Tensor g = Tensor::from_data({1}, {10.0});
    std::vector<const Tensor*> grads = {&g};
    adam.step(params, grads);
    // Bias correction makes the first update lr * g / (|g| + eps).
    CHECK(w[0] == doctest::Approx(-0.001).epsilon(1e-4));
}

TEST_CASE("adam rejects invalid settings") {
    CHECK_THROWS_AS(tensor::Adam({-1.0, 0.9, 0.999, 1e-8}), core::ValidationError);
    CHECK_THROWS_AS(tensor::Adam({0.001, 1.0, 0.999, 1e-8}), core::ValidationError);
}

TEST_CASE("checkpoint round-trips tensors exactly") {
    core::Rng rng(1007);
    Tensor a = random_tensor({3, 4}, rng, -100.0, 100.0);
    Tensor b = random_tensor({2, 1, 2, 2}, rng, -1e-6, 1e-6);
    nlohmann::json doc = tensor::checkpoint_to_json({{"a", &a}, {"b", &b}});
    auto restored = tensor::checkpoint_from_json(doc);
    REQUIRE(restored.count("a") == 1);
    REQUIRE(restored.count("b") == 1);
    CHECK(restored["a"].shape() == a.shape());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(restored["a"][i] == a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(restored["b"][i] == b[i]);
}

TEST_CASE("checkpoint rejects wrong format and duplicate names") {
    nlohmann::json doc = {{"format", "other"}, {"version", 1}, {"entries", nlohmann::json::array()}};
    CHECK_THROWS_AS((void)tensor::checkpoint_from_json(doc), core::ValidationError);
    Tensor a({1});
    CHECK_THROWS_AS((void)tensor::checkpoint_to_json({{"a", &a}, {"a", &a}}),
                    core::ValidationError);
}

TEST_CASE("checkpoint file save and load") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "heartml_ckpt_test.json";
    Tensor a = Tensor::from_data({2, 2}, {1.25, -2.5, 0.0, 1e-17});
    tensor::save_checkpoint(path.string(), {{"w", &a}});
    auto restored = tensor::load_checkpoint(path.string());
    REQUIRE(restored.count("w") == 1);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(restored["w"][i] == a[i]);
    fs::remove(path);
    CHECK_THROWS_AS((void)tensor::load_checkpoint(path.string()), core::IoError);
}
