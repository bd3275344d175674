#include "models/multitask.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "tensor/losses.hpp"

namespace heartml::models {

using heartml::core::NumericError;
using heartml::core::Rng;
using heartml::core::ValidationError;
using namespace heartml::tensor;

ClassifierKind classifier_kind_from_name(const std::string& name) {
    if (name == "mlp") return ClassifierKind::mlp;
    if (name == "cnn") return ClassifierKind::cnn;
    throw ValidationError("unknown classifier '" + name + "' (expected mlp or cnn)");
}

std::string classifier_kind_name(ClassifierKind kind) {
    return kind == ClassifierKind::mlp ? "mlp" : "cnn";
}

std::pair<std::size_t, std::size_t> latent_grid(std::size_t latent_dim) {
    if (latent_dim == 0) throw ValidationError("latent_grid: latent_dim must be positive");
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(latent_dim)));
    while (rows > 1 && latent_dim % rows != 0) --rows;
    if (rows == 0) rows = 1;
    return {rows, latent_dim / rows};
}

void MultitaskConfig::validate() const {
    if (latent_dim == 0) throw ValidationError("MultitaskConfig: latent_dim must be positive");
    if (l1_lambda < 0.0) throw ValidationError("MultitaskConfig: l1_lambda must be >= 0");
    if (alpha < 0.0 || alpha > 1.0) {
        throw ValidationError("MultitaskConfig: alpha must lie in [0, 1]");
    }
    if (epochs <= 0) throw ValidationError("MultitaskConfig: epochs must be positive");
    if (batch_size == 0) throw ValidationError("MultitaskConfig: batch_size must be positive");
    if (classifier == ClassifierKind::mlp) {
        if (mlp_hidden.empty()) {
            throw ValidationError("MultitaskConfig: mlp head needs hidden layers");
        }
        for (std::size_t width : mlp_hidden) {
            if (width == 0) {
                throw ValidationError("MultitaskConfig: hidden width must be positive");
            }
        }
    } else {
        if (cnn_filters == 0 || cnn_kernel == 0 || cnn_pool == 0 || cnn_dense == 0) {
            throw ValidationError("MultitaskConfig: cnn head sizes must be positive");
        }
        const auto [rows, cols] = latent_grid(latent_dim);
        if (rows < cnn_kernel || cols < cnn_kernel) {
            throw ValidationError("MultitaskConfig: latent grid " + std::to_string(rows) +
                                  "x" + std::to_string(cols) +
                                  " is smaller than the convolution kernel");
        }
        const std::size_t conv_h = rows - cnn_kernel + 1;
        const std::size_t conv_w = cols - cnn_kernel + 1;
        if (conv_h / cnn_pool == 0 || conv_w / cnn_pool == 0) {
            throw ValidationError(
                "MultitaskConfig: pooled feature map would be empty for latent grid " +
                std::to_string(rows) + "x" + std::to_string(cols));
        }
    }
}

nlohmann::json MultitaskConfig::to_json() const {
    return {{"latent_dim", latent_dim},
            {"l1_lambda", l1_lambda},
            {"alpha", alpha},
            {"classifier", classifier_kind_name(classifier)},
            {"mlp_hidden", mlp_hidden},
            {"cnn_filters", cnn_filters},
            {"cnn_kernel", cnn_kernel},
            {"cnn_pool", cnn_pool},
            {"cnn_dense", cnn_dense},
            {"epochs", epochs},
            {"batch_size", batch_size},
            {"learning_rate", adam.learning_rate},
            {"beta1", adam.beta1},
            {"beta2", adam.beta2},
            {"epsilon", adam.epsilon}};
}

MultitaskConfig MultitaskConfig::from_json(const nlohmann::json& doc) {
    MultitaskConfig config;
    config.latent_dim = doc.value("latent_dim", config.latent_dim);
    config.l1_lambda = doc.value("l1_lambda", config.l1_lambda);
    config.alpha = doc.value("alpha", config.alpha);
    if (doc.contains("classifier")) {
        config.classifier = classifier_kind_from_name(doc["classifier"].get<std::string>());
    }
    config.mlp_hidden = doc.value("mlp_hidden", config.mlp_hidden);
    config.cnn_filters = doc.value("cnn_filters", config.cnn_filters);
    config.cnn_kernel = doc.value("cnn_kernel", config.cnn_kernel);
    config.cnn_pool = doc.value("cnn_pool", config.cnn_pool);
    config.cnn_dense = doc.value("cnn_dense", config.cnn_dense);
    config.epochs = doc.value("epochs", config.epochs);
    config.batch_size = doc.value("batch_size", config.batch_size);
    config.adam.learning_rate = doc.value("learning_rate", config.adam.learning_rate);
    config.adam.beta1 = doc.value("beta1", config.adam.beta1);
    config.adam.beta2 = doc.value("beta2", config.adam.beta2);
    config.adam.epsilon = doc.value("epsilon", config.adam.epsilon);
    config.validate();
    return config;
}

namespace {

// The pooling window must tile the feature map exactly; when the convolution
// output is not a multiple of the window the map is cropped at the bottom /
// right edge first. Gradients for cropped cells are zero.
Tensor crop_spatial(const Tensor& x, std::size_t new_h, std::size_t new_w) {
    const std::size_t batch = x.dim(0), channels = x.dim(1), h = x.dim(2), w = x.dim(3);
    if (new_h == h && new_w == w) return x;
    Tensor out({batch, channels, new_h, new_w});
    const double* xp = x.data();
    double* op = out.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t c = 0; c < channels; ++c) {
            for (std::size_t i = 0; i < new_h; ++i) {
                const double* src = xp + ((b * channels + c) * h + i) * w;
                double* dst = op + ((b * channels + c) * new_h + i) * new_w;
                for (std::size_t j = 0; j < new_w; ++j) dst[j] = src[j];
            }
        }
    }
    return out;
}

Tensor pad_spatial_grad(const Tensor& grad, std::size_t full_h, std::size_t full_w) {
    const std::size_t batch = grad.dim(0), channels = grad.dim(1);
    const std::size_t h = grad.dim(2), w = grad.dim(3);
    if (h == full_h && w == full_w) return grad;
    Tensor out({batch, channels, full_h, full_w});
    const double* gp = grad.data();
    double* op = out.data();
    for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t c = 0; c < channels; ++c) {
            for (std::size_t i = 0; i < h; ++i) {
                const double* src = gp + ((b * channels + c) * h + i) * w;
                double* dst = op + ((b * channels + c) * full_h + i) * full_w;
                for (std::size_t j = 0; j < w; ++j) dst[j] = src[j];
            }
        }
    }
    return out;
}

} // namespace

struct MultitaskModel::ForwardState {
    DenseCache enc_cache;
    DenseCache dec_cache;
    Tensor latent;
    Tensor reconstruction;
    Conv2DCache conv_cache;
    MaxPoolCache pool_cache;
    std::size_t conv_h = 0, conv_w = 0;   // pre-crop feature map size
    std::size_t crop_h = 0, crop_w = 0;   // size fed into pooling
    std::size_t grid_rows = 0, grid_cols = 0;
    std::vector<DenseCache> head_caches;
    Tensor probs;
};

void MultitaskModel::build(std::size_t input_dim, Rng& rng) {
    if (config_.latent_dim <= input_dim) {
        throw ValidationError("MultitaskModel: latent_dim " +
                              std::to_string(config_.latent_dim) +
                              " must exceed the input width " + std::to_string(input_dim) +
                              " (overcomplete autoencoder)");
    }
    encoder_ = DenseLayer(input_dim, config_.latent_dim, Activation::sigmoid);
    decoder_ = DenseLayer(config_.latent_dim, input_dim, Activation::sigmoid);
    encoder_.init_glorot(rng);
    decoder_.init_glorot(rng);

    head_.clear();
    if (config_.classifier == ClassifierKind::mlp) {
        std::size_t width = config_.latent_dim;
        for (std::size_t hidden : config_.mlp_hidden) {
            head_.emplace_back(width, hidden, Activation::relu);
            width = hidden;
        }
        head_.emplace_back(width, 1, Activation::sigmoid);
    } else {
        const auto [rows, cols] = latent_grid(config_.latent_dim);
        conv_ = Conv2DLayer(1, config_.cnn_filters, config_.cnn_kernel, config_.cnn_kernel,
                            1, Activation::relu);
        conv_.init_glorot(rng);
        const std::size_t conv_h = rows - config_.cnn_kernel + 1;
        const std::size_t conv_w = cols - config_.cnn_kernel + 1;
        const std::size_t pooled_h = conv_h / config_.cnn_pool;
        const std::size_t pooled_w = conv_w / config_.cnn_pool;
        const std::size_t flat = config_.cnn_filters * pooled_h * pooled_w;
        head_.emplace_back(flat, config_.cnn_dense, Activation::relu);
        head_.emplace_back(config_.cnn_dense, 1, Activation::sigmoid);
    }
    for (auto& layer : head_) layer.init_glorot(rng);
}

Tensor MultitaskModel::classifier_forward(const Tensor& latent, ForwardState& state) const {
    Tensor current;
    if (config_.classifier == ClassifierKind::cnn) {
        const auto [rows, cols] = latent_grid(config_.latent_dim);
        state.grid_rows = rows;
        state.grid_cols = cols;
        const Tensor grid = latent.reshaped({latent.dim(0), 1, rows, cols});
        Tensor conv_out = conv2d_forward(conv_, grid, &state.conv_cache);
        state.conv_h = conv_out.dim(2);
        state.conv_w = conv_out.dim(3);
        state.crop_h = (state.conv_h / config_.cnn_pool) * config_.cnn_pool;
        state.crop_w = (state.conv_w / config_.cnn_pool) * config_.cnn_pool;
        conv_out = crop_spatial(conv_out, state.crop_h, state.crop_w);
        const Tensor pooled =
            maxpool2d(conv_out, config_.cnn_pool, config_.cnn_pool, &state.pool_cache);
        current = flatten(pooled);
    } else {
        current = latent;
    }
    state.head_caches.assign(head_.size(), DenseCache());
    for (std::size_t i = 0; i < head_.size(); ++i) {
        current = dense_forward(head_[i], current, &state.head_caches[i]);
    }
    return current;
}

void MultitaskModel::forward(const Tensor& x, ForwardState& state) const {
    state.latent = dense_forward(encoder_, x, &state.enc_cache);
    state.reconstruction = dense_forward(decoder_, state.latent, &state.dec_cache);
    state.probs = classifier_forward(state.latent, state);
}

void MultitaskModel::train(const data::FeatureMatrix& engineered,
                           const MultitaskConfig& config, std::uint64_t seed) {
    config.validate();
    engineered.check_consistent("MultitaskModel::train");
    if (engineered.rows == 0) throw ValidationError("MultitaskModel::train: empty dataset");
    for (int label : engineered.labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("MultitaskModel::train: labels must be 0 or 1");
        }
    }

    config_ = config;
    const std::size_t numeric_columns[] = {data::kMaxHrColumn, data::kOldpeakColumn};
    data::FeatureMatrix scaled = engineered;
    if (engineered.cols == data::kFeatureCount) {
        scaler_.fit(engineered, numeric_columns);
        scaler_.transform(scaled);
    } else {
        scaler_ = data::MinMaxScaler();
    }

    Rng rng(seed);
    build(scaled.cols, rng);

    Adam optimizer(config.adam);
    std::vector<Tensor*> params{&encoder_.weights, &encoder_.bias, &decoder_.weights,
                                &decoder_.bias};
    if (config_.classifier == ClassifierKind::cnn) {
        params.push_back(&conv_.kernels);
        params.push_back(&conv_.bias);
    }
    for (auto& layer : head_) {
        params.push_back(&layer.weights);
        params.push_back(&layer.bias);
    }
    optimizer.init(params);

    history_.clear();
    history_.reserve(static_cast<std::size_t>(config.epochs));
    const double n = static_cast<double>(scaled.rows);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_bce = 0.0, epoch_mse = 0.0, epoch_l1 = 0.0;
        const auto batches = make_batches(scaled.rows, config.batch_size, rng);
        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto& batch_rows = batches[b];
            const Tensor x = gather_rows(scaled, batch_rows);
            const std::vector<int> y = gather_labels(scaled, batch_rows);

            ForwardState state;
            forward(x, state);

            LossResult bce = bce_loss(state.probs, y);
            LossResult mse = mse_loss(state.reconstruction, x);
            LossResult l1 = l1_penalty(state.latent, config_.l1_lambda);
            const double total =
                config_.alpha * bce.value + (1.0 - config_.alpha) * mse.value + l1.value;
            if (!std::isfinite(total)) {
                throw NumericError("MultitaskModel::train: loss diverged at epoch " +
                                   std::to_string(epoch) + ", batch " + std::to_string(b));
            }
            const double weight = static_cast<double>(batch_rows.size()) / n;
            epoch_bce += bce.value * weight;
            epoch_mse += mse.value * weight;
            epoch_l1 += l1.value * weight;

            // Classifier path.
            scale_inplace(bce.grad, config_.alpha);
            std::vector<Tensor> head_w(head_.size()), head_b(head_.size());
            Tensor upstream = bce.grad;
            for (std::size_t i = head_.size(); i-- > 0;) {
                DenseGrads grads = dense_backward(head_[i], state.head_caches[i], upstream);
                head_w[i] = std::move(grads.weights);
                head_b[i] = std::move(grads.bias);
                upstream = std::move(grads.input);
            }
            Tensor latent_grad_clf;
            Tensor conv_k_grad, conv_b_grad;
            if (config_.classifier == ClassifierKind::cnn) {
                const std::size_t batch_n = x.dim(0);
                const std::size_t pooled_h = state.crop_h / config_.cnn_pool;
                const std::size_t pooled_w = state.crop_w / config_.cnn_pool;
                Tensor pooled_grad = upstream.reshaped(
                    {batch_n, config_.cnn_filters, pooled_h, pooled_w});
                Tensor conv_grad = maxpool2d_backward(state.pool_cache, pooled_grad);
                conv_grad = pad_spatial_grad(conv_grad, state.conv_h, state.conv_w);
                Conv2DGrads grads = conv2d_backward(conv_, state.conv_cache, conv_grad);
                conv_k_grad = std::move(grads.kernels);
                conv_b_grad = std::move(grads.bias);
                latent_grad_clf = grads.input.reshaped({batch_n, config_.latent_dim});
            } else {
                latent_grad_clf = std::move(upstream);
            }

            // Reconstruction path.
            scale_inplace(mse.grad, 1.0 - config_.alpha);
            DenseGrads dec_grads = dense_backward(decoder_, state.dec_cache, mse.grad);

            // Combine at the latent code and push through the encoder.
            Tensor latent_grad = std::move(dec_grads.input);
            add_inplace(latent_grad, latent_grad_clf);
            add_inplace(latent_grad, l1.grad);
            DenseGrads enc_grads = dense_backward(encoder_, state.enc_cache, latent_grad);

            std::vector<const Tensor*> grad_ptrs{&enc_grads.weights, &enc_grads.bias,
                                                 &dec_grads.weights, &dec_grads.bias};
            if (config_.classifier == ClassifierKind::cnn) {
                grad_ptrs.push_back(&conv_k_grad);
                grad_ptrs.push_back(&conv_b_grad);
            }
            for (std::size_t i = 0; i < head_.size(); ++i) {
                grad_ptrs.push_back(&head_w[i]);
                grad_ptrs.push_back(&head_b[i]);
            }
            optimizer.step(params, grad_ptrs);
        }

        EpochStats stats;
        stats.bce = epoch_bce;
        stats.mse = epoch_mse;
        stats.l1 = epoch_l1;
        stats.total =
            config_.alpha * epoch_bce + (1.0 - config_.alpha) * epoch_mse + epoch_l1;
        std::vector<std::size_t> all(scaled.rows);
        for (std::size_t i = 0; i < scaled.rows; ++i) all[i] = i;
        ForwardState eval_state;
        forward(gather_rows(scaled, all), eval_state);
        stats.accuracy =
            binary_accuracy({eval_state.probs.data(), eval_state.probs.size()},
                            scaled.labels);
        history_.push_back(stats);
    }
    trained_ = true;
}

std::vector<double> MultitaskModel::predict_proba(
    const data::FeatureMatrix& engineered) const {
    if (!trained_) throw ValidationError("MultitaskModel: predict before train");
    engineered.check_consistent("MultitaskModel::predict");
    if (engineered.cols != encoder_.in_dim()) {
        throw ValidationError("MultitaskModel::predict: column count mismatch");
    }
    data::FeatureMatrix scaled = engineered;
    if (scaler_.fitted()) scaler_.transform(scaled);
    std::vector<std::size_t> all(scaled.rows);
    for (std::size_t i = 0; i < scaled.rows; ++i) all[i] = i;
    ForwardState state;
    forward(gather_rows(scaled, all), state);
    state.probs.ensure_finite("MultitaskModel::predict");
    return state.probs.values();
}

std::vector<int> MultitaskModel::predict(const data::FeatureMatrix& engineered) const {
    const std::vector<double> probs = predict_proba(engineered);
    std::vector<int> labels(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        labels[i] = probability_to_label(probs[i]);
    }
    return labels;
}

tensor::Tensor MultitaskModel::encode(const data::FeatureMatrix& engineered) const {
    if (!trained_) throw ValidationError("MultitaskModel: encode before train");
    data::FeatureMatrix scaled = engineered;
    if (scaler_.fitted()) scaler_.transform(scaled);
    std::vector<std::size_t> all(scaled.rows);
    for (std::size_t i = 0; i < scaled.rows; ++i) all[i] = i;
    return dense_forward(encoder_, gather_rows(scaled, all), nullptr);
}

tensor::Tensor MultitaskModel::reconstruct(const data::FeatureMatrix& engineered) const {
    const Tensor latent = encode(engineered);
    return dense_forward(decoder_, latent, nullptr);
}

void MultitaskModel::restore(const MultitaskConfig& config, data::MinMaxScaler scaler,
                             tensor::DenseLayer encoder, tensor::DenseLayer decoder,
                             tensor::Conv2DLayer conv,
                             std::vector<tensor::DenseLayer> head) {
    config.validate();
    if (head.empty()) throw ValidationError("MultitaskModel::restore: empty head");
    config_ = config;
    scaler_ = std::move(scaler);
    encoder_ = std::move(encoder);
    decoder_ = std::move(decoder);
    conv_ = std::move(conv);
    head_ = std::move(head);
    history_.clear();
    trained_ = true;
}

} // namespace heartml::models
