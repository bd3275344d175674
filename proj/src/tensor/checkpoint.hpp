// Version-tagged JSON checkpoints: named tensors with explicit shapes and
// round-trip exact values. Layout is documented in docs/formats.md.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tensor/tensor.hpp"

namespace heartml::tensor {

inline constexpr const char* kCheckpointFormat = "heartml.checkpoint";
inline constexpr int kCheckpointVersion = 1;

using NamedTensors = std::vector<std::pair<std::string, const Tensor*>>;

nlohmann::json checkpoint_to_json(const NamedTensors& tensors);
std::map<std::string, Tensor> checkpoint_from_json(const nlohmann::json& doc);

void save_checkpoint(const std::string& path, const NamedTensors& tensors);
std::map<std::string, Tensor> load_checkpoint(const std::string& path);

} // namespace heartml::tensor
