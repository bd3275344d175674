// Multitask network: a sparse overcomplete autoencoder over the 24
// engineered inputs trained jointly with a classification head that reads
// the latent code. Total loss per batch is
//   alpha * BCE(probability, label) + (1 - alpha) * MSE(reconstruction, input)
//   + l1_lambda * sum(|latent|).
// The head is either a small ReLU MLP or a Conv2D stack over the latent
// vector reshaped into a near-square grid.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "data/features.hpp"
#include "models/train_util.hpp"
#include "tensor/adam.hpp"
#include "tensor/layers.hpp"

namespace heartml::models {

enum class ClassifierKind { mlp, cnn };

ClassifierKind classifier_kind_from_name(const std::string& name);
std::string classifier_kind_name(ClassifierKind kind);

// Factor pair (rows, cols) of latent_dim with rows <= cols minimizing
// cols - rows; the reshape target for the CNN head.
std::pair<std::size_t, std::size_t> latent_grid(std::size_t latent_dim);

struct MultitaskConfig {
    std::size_t latent_dim = 100;
    double l1_lambda = 1e-4;
    double alpha = 0.5;
    ClassifierKind classifier = ClassifierKind::mlp;
    std::vector<std::size_t> mlp_hidden{64, 32};
    std::size_t cnn_filters = 16;
    std::size_t cnn_kernel = 3;
    std::size_t cnn_pool = 2;
    std::size_t cnn_dense = 64;
    int epochs = 150;
    std::size_t batch_size = 32;
    tensor::AdamParams adam{};

    void validate() const;
    nlohmann::json to_json() const;
    static MultitaskConfig from_json(const nlohmann::json& doc);
};

class MultitaskModel {
public:
    void train(const data::FeatureMatrix& engineered, const MultitaskConfig& config,
               std::uint64_t seed);

    std::vector<double> predict_proba(const data::FeatureMatrix& engineered) const;
    std::vector<int> predict(const data::FeatureMatrix& engineered) const;

    // Latent codes (rows x latent_dim) for downstream feature use.
    tensor::Tensor encode(const data::FeatureMatrix& engineered) const;
    // Decoder output for the same rows (rows x 24), on the scaled scale.
    tensor::Tensor reconstruct(const data::FeatureMatrix& engineered) const;

    const std::vector<EpochStats>& history() const noexcept { return history_; }
    const MultitaskConfig& config() const noexcept { return config_; }
    const data::MinMaxScaler& scaler() const noexcept { return scaler_; }
    bool trained() const noexcept { return trained_; }

    tensor::DenseLayer& encoder() noexcept { return encoder_; }
    tensor::DenseLayer& decoder() noexcept { return decoder_; }
    tensor::Conv2DLayer& conv() noexcept { return conv_; }
    std::vector<tensor::DenseLayer>& head() noexcept { return head_; }
    const tensor::DenseLayer& encoder() const noexcept { return encoder_; }
    const tensor::DenseLayer& decoder() const noexcept { return decoder_; }
    const tensor::Conv2DLayer& conv() const noexcept { return conv_; }
    const std::vector<tensor::DenseLayer>& head() const noexcept { return head_; }

    void restore(const MultitaskConfig& config, data::MinMaxScaler scaler,
                 tensor::DenseLayer encoder, tensor::DenseLayer decoder,
                 tensor::Conv2DLayer conv, std::vector<tensor::DenseLayer> head);

private:
    struct ForwardState;

    void build(std::size_t input_dim, core::Rng& rng);
    void forward(const tensor::Tensor& x, ForwardState& state) const;
    tensor::Tensor classifier_forward(const tensor::Tensor& latent,
                                      ForwardState& state) const;

    MultitaskConfig config_;
    data::MinMaxScaler scaler_;
    tensor::DenseLayer encoder_;
    tensor::DenseLayer decoder_;
    tensor::Conv2DLayer conv_;                // cnn head only
    std::vector<tensor::DenseLayer> head_;    // dense layers of the head
    std::vector<EpochStats> history_;
    bool trained_ = false;
};

} // namespace heartml::models
