#include "tensor/checkpoint.hpp"

#include <fstream>
#include <set>

#include "core/errors.hpp"

namespace heartml::tensor {

using heartml::core::IoError;
using heartml::core::ValidationError;
using nlohmann::json;

nlohmann::json checkpoint_to_json(const NamedTensors& tensors) {
    json entries = json::array();
    std::set<std::string> seen;
    for (const auto& [name, tensor] : tensors) {
        if (!seen.insert(name).second) {
            throw ValidationError("checkpoint: duplicate tensor name '" + name + "'");
        }
        entries.push_back({{"name", name},
                           {"shape", tensor->shape()},
                           {"values", tensor->values()}});
    }
    return json{{"format", kCheckpointFormat},
                {"version", kCheckpointVersion},
                {"entries", entries}};
}

std::map<std::string, Tensor> checkpoint_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kCheckpointFormat) {
        throw ValidationError("checkpoint: missing or wrong format tag");
    }
    if (doc.value("version", -1) != kCheckpointVersion) {
        throw ValidationError("checkpoint: unsupported version");
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw ValidationError("checkpoint: missing entries array");
    }
    std::map<std::string, Tensor> result;
    for (const auto& entry : doc["entries"]) {
        const std::string name = entry.value("name", "");
        if (name.empty()) throw ValidationError("checkpoint: entry without a name");
        if (result.count(name)) {
            throw ValidationError("checkpoint: duplicate tensor name '" + name + "'");
        }
        std::vector<std::size_t> shape = entry.at("shape").get<std::vector<std::size_t>>();
        std::vector<double> values = entry.at("values").get<std::vector<double>>();
        result.emplace(name, Tensor::from_data(std::move(shape), std::move(values)));
    }
    return result;
}

void save_checkpoint(const std::string& path, const NamedTensors& tensors) {
    std::ofstream out(path);
    if (!out) throw IoError("checkpoint: cannot open '" + path + "' for writing");
    out << checkpoint_to_json(tensors).dump(2) << "\n";
    if (!out) throw IoError("checkpoint: write to '" + path + "' failed");
}

std::map<std::string, Tensor> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("checkpoint: cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw ValidationError("checkpoint: '" + path + "' is not valid JSON: " + err.what());
    }
    return checkpoint_from_json(doc);
}

} // namespace heartml::tensor
