// Plain feed-forward classifier: ReLU hidden stack into a single sigmoid
// output, trained with Adam on binary cross-entropy. Serves as the
// neural-network reference point next to the multitask models.
#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "data/features.hpp"
#include "models/train_util.hpp"
#include "tensor/adam.hpp"
#include "tensor/layers.hpp"

namespace heartml::models {

struct MlpConfig {
    std::vector<std::size_t> hidden{64, 32};
    int epochs = 150;
    std::size_t batch_size = 32;
    tensor::AdamParams adam{};

    void validate() const;
    nlohmann::json to_json() const;
    static MlpConfig from_json(const nlohmann::json& doc);
};

class MlpClassifier {
public:
    // Fits the internal min-max scaler on the training matrix, then trains.
    void train(const data::FeatureMatrix& engineered, const MlpConfig& config,
               std::uint64_t seed);

    std::vector<double> predict_proba(const data::FeatureMatrix& engineered) const;
    std::vector<int> predict(const data::FeatureMatrix& engineered) const;

    const std::vector<EpochStats>& history() const noexcept { return history_; }
    const MlpConfig& config() const noexcept { return config_; }
    const data::MinMaxScaler& scaler() const noexcept { return scaler_; }
    std::vector<tensor::DenseLayer>& layers() noexcept { return layers_; }
    const std::vector<tensor::DenseLayer>& layers() const noexcept { return layers_; }
    std::size_t input_dim() const;

    // Used by model_io when rebuilding from a checkpoint.
    void restore(const MlpConfig& config, data::MinMaxScaler scaler,
                 std::vector<tensor::DenseLayer> layers);

private:
    tensor::Tensor forward(const tensor::Tensor& x,
                           std::vector<tensor::DenseCache>* caches) const;

    MlpConfig config_;
    data::MinMaxScaler scaler_;
    std::vector<tensor::DenseLayer> layers_;
    std::vector<EpochStats> history_;
};

} // namespace heartml::models
