#include "models/model_io.hpp"

#include <fstream>

#include "core/errors.hpp"
#include "tensor/checkpoint.hpp"

namespace heartml::models {

using heartml::core::IoError;
using heartml::core::ValidationError;
using heartml::tensor::Activation;
using heartml::tensor::activation_from_name;
using heartml::tensor::activation_name;
using heartml::tensor::DenseLayer;
using heartml::tensor::Tensor;
using nlohmann::json;

namespace {

json dense_meta(const DenseLayer& layer) {
    return {{"in", layer.in_dim()},
            {"out", layer.out_dim()},
            {"activation", activation_name(layer.activation)}};
}

DenseLayer dense_from_parts(const json& meta, Tensor weights, Tensor bias) {
    DenseLayer layer;
    layer.activation = activation_from_name(meta.at("activation").get<std::string>());
    layer.weights = std::move(weights);
    layer.bias = std::move(bias);
    if (layer.weights.rank() != 2 || layer.bias.rank() != 1 ||
        layer.weights.dim(0) != layer.bias.dim(0)) {
        throw ValidationError("model: dense layer tensors have inconsistent shapes");
    }
    return layer;
}

void write_document(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("model: cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("model: write to '" + path + "' failed");
}

json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("model: cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw ValidationError("model: '" + path + "' is not valid JSON: " + err.what());
    }
    if (doc.value("format", "") != kModelFormat) {
        throw ValidationError("model: '" + path + "' is missing the format tag");
    }
    if (doc.value("version", -1) != kModelVersion) {
        throw ValidationError("model: '" + path + "' has an unsupported version");
    }
    return doc;
}

Tensor take_tensor(std::map<std::string, Tensor>& tensors, const std::string& name) {
    auto it = tensors.find(name);
    if (it == tensors.end()) {
        throw ValidationError("model: checkpoint is missing tensor '" + name + "'");
    }
    Tensor t = std::move(it->second);
    tensors.erase(it);
    return t;
}

} // namespace

void save_model(const MultitaskModel& model, const std::string& path) {
    if (!model.trained()) throw ValidationError("save_model: model is not trained");
    tensor::NamedTensors tensors{{"encoder.weights", &model.encoder().weights},
                                 {"encoder.bias", &model.encoder().bias},
                                 {"decoder.weights", &model.decoder().weights},
                                 {"decoder.bias", &model.decoder().bias}};
    json head_meta = json::array();
    if (model.config().classifier == ClassifierKind::cnn) {
        tensors.push_back({"classifier.conv.kernels", &model.conv().kernels});
        tensors.push_back({"classifier.conv.bias", &model.conv().bias});
    }
    for (std::size_t i = 0; i < model.head().size(); ++i) {
        const std::string stem = "classifier.dense" + std::to_string(i);
        tensors.push_back({stem + ".weights", &model.head()[i].weights});
        tensors.push_back({stem + ".bias", &model.head()[i].bias});
        head_meta.push_back(dense_meta(model.head()[i]));
    }
    json doc{{"format", kModelFormat},
             {"version", kModelVersion},
             {"kind", "multitask"},
             {"config", model.config().to_json()},
             {"scaler", model.scaler().to_json()},
             {"head", head_meta},
             {"checkpoint", tensor::checkpoint_to_json(tensors)}};
    write_document(doc, path);
}

void save_model(const MlpClassifier& model, const std::string& path) {
    tensor::NamedTensors tensors;
    json layer_meta = json::array();
    for (std::size_t i = 0; i < model.layers().size(); ++i) {
        const std::string stem = "dense" + std::to_string(i);
        tensors.push_back({stem + ".weights", &model.layers()[i].weights});
        tensors.push_back({stem + ".bias", &model.layers()[i].bias});
        layer_meta.push_back(dense_meta(model.layers()[i]));
    }
    json doc{{"format", kModelFormat},
             {"version", kModelVersion},
             {"kind", "mlp"},
             {"config", model.config().to_json()},
             {"scaler", model.scaler().to_json()},
             {"layers", layer_meta},
             {"checkpoint", tensor::checkpoint_to_json(tensors)}};
    write_document(doc, path);
}

MultitaskModel load_multitask_model(const std::string& path) {
    json doc = read_document(path);
    if (doc.value("kind", "") != "multitask") {
        throw ValidationError("model: '" + path + "' is not a multitask model");
    }
    const MultitaskConfig config = MultitaskConfig::from_json(doc.at("config"));
    data::MinMaxScaler scaler = data::MinMaxScaler::from_json(doc.at("scaler"));
    auto tensors = tensor::checkpoint_from_json(doc.at("checkpoint"));

    json enc_meta{{"activation", "sigmoid"}};
    DenseLayer encoder = dense_from_parts(enc_meta, take_tensor(tensors, "encoder.weights"),
                                          take_tensor(tensors, "encoder.bias"));
    DenseLayer decoder = dense_from_parts(enc_meta, take_tensor(tensors, "decoder.weights"),
                                          take_tensor(tensors, "decoder.bias"));

    tensor::Conv2DLayer conv;
    if (config.classifier == ClassifierKind::cnn) {
        conv.kernels = take_tensor(tensors, "classifier.conv.kernels");
        conv.bias = take_tensor(tensors, "classifier.conv.bias");
        conv.stride = 1;
        conv.activation = Activation::relu;
        if (conv.kernels.rank() != 4) {
            throw ValidationError("model: conv kernels must be rank 4");
        }
    }

    const json& head_meta = doc.at("head");
    std::vector<DenseLayer> head;
    for (std::size_t i = 0; i < head_meta.size(); ++i) {
        const std::string stem = "classifier.dense" + std::to_string(i);
        head.push_back(dense_from_parts(head_meta[i], take_tensor(tensors, stem + ".weights"),
                                        take_tensor(tensors, stem + ".bias")));
    }
    if (!tensors.empty()) {
        throw ValidationError("model: checkpoint contains unexpected tensors");
    }

    MultitaskModel model;
    model.restore(config, std::move(scaler), std::move(encoder), std::move(decoder),
                  std::move(conv), std::move(head));
    return model;
}

MlpClassifier load_mlp_model(const std::string& path) {
    json doc = read_document(path);
    if (doc.value("kind", "") != "mlp") {
        throw ValidationError("model: '" + path + "' is not an mlp model");
    }
    const MlpConfig config = MlpConfig::from_json(doc.at("config"));
    data::MinMaxScaler scaler = data::MinMaxScaler::from_json(doc.at("scaler"));
    auto tensors = tensor::checkpoint_from_json(doc.at("checkpoint"));

    const json& layer_meta = doc.at("layers");
    std::vector<DenseLayer> layers;
    for (std::size_t i = 0; i < layer_meta.size(); ++i) {
        const std::string stem = "dense" + std::to_string(i);
        layers.push_back(dense_from_parts(layer_meta[i],
                                          take_tensor(tensors, stem + ".weights"),
                                          take_tensor(tensors, stem + ".bias")));
    }
    if (!tensors.empty()) {
        throw ValidationError("model: checkpoint contains unexpected tensors");
    }

    MlpClassifier model;
    model.restore(config, std::move(scaler), std::move(layers));
    return model;
}

std::string model_kind(const std::string& path) {
    return read_document(path).value("kind", "");
}

} // namespace heartml::models
