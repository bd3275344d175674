#include "models/mlp.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "tensor/losses.hpp"

namespace heartml::models {

using heartml::core::NumericError;
using heartml::core::Rng;
using heartml::core::ValidationError;
using namespace heartml::tensor;

void MlpConfig::validate() const {
    if (hidden.empty()) throw ValidationError("MlpConfig: at least one hidden layer");
    for (std::size_t width : hidden) {
        if (width == 0) throw ValidationError("MlpConfig: hidden width must be positive");
    }
    if (epochs <= 0) throw ValidationError("MlpConfig: epochs must be positive");
    if (batch_size == 0) throw ValidationError("MlpConfig: batch_size must be positive");
}

nlohmann::json MlpConfig::to_json() const {
    return {{"hidden", hidden},
            {"epochs", epochs},
            {"batch_size", batch_size},
            {"learning_rate", adam.learning_rate},
            {"beta1", adam.beta1},
            {"beta2", adam.beta2},
            {"epsilon", adam.epsilon}};
}

MlpConfig MlpConfig::from_json(const nlohmann::json& doc) {
    MlpConfig config;
    config.hidden = doc.value("hidden", config.hidden);
    config.epochs = doc.value("epochs", config.epochs);
    config.batch_size = doc.value("batch_size", config.batch_size);
    config.adam.learning_rate = doc.value("learning_rate", config.adam.learning_rate);
    config.adam.beta1 = doc.value("beta1", config.adam.beta1);
    config.adam.beta2 = doc.value("beta2", config.adam.beta2);
    config.adam.epsilon = doc.value("epsilon", config.adam.epsilon);
    config.validate();
    return config;
}

std::size_t MlpClassifier::input_dim() const {
    if (layers_.empty()) throw ValidationError("MlpClassifier: not trained");
    return layers_.front().in_dim();
}

void MlpClassifier::restore(const MlpConfig& config, data::MinMaxScaler scaler,
                            std::vector<tensor::DenseLayer> layers) {
    config.validate();
    if (layers.empty()) throw ValidationError("MlpClassifier::restore: no layers");
    config_ = config;
    scaler_ = std::move(scaler);
    layers_ = std::move(layers);
    history_.clear();
}

Tensor MlpClassifier::forward(const Tensor& x, std::vector<DenseCache>* caches) const {
    Tensor current = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        DenseCache* cache = caches ? &(*caches)[i] : nullptr;
        current = dense_forward(layers_[i], current, cache);
    }
    return current;
}

void MlpClassifier::train(const data::FeatureMatrix& engineered, const MlpConfig& config,
                          std::uint64_t seed) {
    config.validate();
    engineered.check_consistent("MlpClassifier::train");
    if (engineered.rows == 0) throw ValidationError("MlpClassifier::train: empty dataset");
    for (int label : engineered.labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("MlpClassifier::train: labels must be 0 or 1");
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
    layers_.clear();
    std::size_t width = scaled.cols;
    for (std::size_t hidden : config.hidden) {
        layers_.emplace_back(width, hidden, Activation::relu);
        width = hidden;
    }
    layers_.emplace_back(width, 1, Activation::sigmoid);
    for (auto& layer : layers_) layer.init_glorot(rng);

    Adam optimizer(config.adam);
    std::vector<Tensor*> params;
    for (auto& layer : layers_) {
        params.push_back(&layer.weights);
        params.push_back(&layer.bias);
    }
    optimizer.init(params);

    history_.clear();
    history_.reserve(static_cast<std::size_t>(config.epochs));
    const double n = static_cast<double>(scaled.rows);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_bce = 0.0;
        const auto batches = make_batches(scaled.rows, config.batch_size, rng);
        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto& batch_rows = batches[b];
            const Tensor x = gather_rows(scaled, batch_rows);
            const std::vector<int> y = gather_labels(scaled, batch_rows);

            std::vector<DenseCache> caches(layers_.size());
            const Tensor probs = forward(x, &caches);
            LossResult loss = bce_loss(probs, y);
            if (!std::isfinite(loss.value)) {
                throw NumericError("MlpClassifier::train: loss diverged at epoch " +
                                   std::to_string(epoch) + ", batch " + std::to_string(b));
            }
            epoch_bce += loss.value * static_cast<double>(batch_rows.size()) / n;

            std::vector<Tensor> grads_w(layers_.size());
            std::vector<Tensor> grads_b(layers_.size());
            Tensor upstream = loss.grad;
            for (std::size_t i = layers_.size(); i-- > 0;) {
                DenseGrads grads = dense_backward(layers_[i], caches[i], upstream);
                grads_w[i] = std::move(grads.weights);
                grads_b[i] = std::move(grads.bias);
                upstream = std::move(grads.input);
            }
            std::vector<const Tensor*> grad_ptrs;
            for (std::size_t i = 0; i < layers_.size(); ++i) {
                grad_ptrs.push_back(&grads_w[i]);
                grad_ptrs.push_back(&grads_b[i]);
            }
            optimizer.step(params, grad_ptrs);
        }

        EpochStats stats;
        stats.bce = epoch_bce;
        stats.total = epoch_bce;
        std::vector<std::size_t> all(scaled.rows);
        for (std::size_t i = 0; i < scaled.rows; ++i) all[i] = i;
        const Tensor probs = forward(gather_rows(scaled, all), nullptr);
        stats.accuracy = binary_accuracy({probs.data(), probs.size()}, scaled.labels);
        history_.push_back(stats);
    }
}

std::vector<double> MlpClassifier::predict_proba(const data::FeatureMatrix& engineered) const {
    if (layers_.empty()) throw ValidationError("MlpClassifier: predict before train");
    engineered.check_consistent("MlpClassifier::predict");
    if (engineered.cols != input_dim()) {
        throw ValidationError("MlpClassifier::predict: column count mismatch");
    }
    data::FeatureMatrix scaled = engineered;
    if (scaler_.fitted()) scaler_.transform(scaled);
    std::vector<std::size_t> all(scaled.rows);
    for (std::size_t i = 0; i < scaled.rows; ++i) all[i] = i;
    const Tensor probs = forward(gather_rows(scaled, all), nullptr);
    probs.ensure_finite("MlpClassifier::predict");
    return probs.values();
}

std::vector<int> MlpClassifier::predict(const data::FeatureMatrix& engineered) const {
    const std::vector<double> probs = predict_proba(engineered);
    std::vector<int> labels(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        labels[i] = probability_to_label(probs[i]);
    }
    return labels;
}

} // namespace heartml::models
