// Model persistence: one JSON document holding the config, the fitted
// scaler and a tensor checkpoint. See docs/formats.md.
#pragma once

#include <string>

#include "models/mlp.hpp"
#include "models/multitask.hpp"

namespace heartml::models {

inline constexpr const char* kModelFormat = "heartml.model";
inline constexpr int kModelVersion = 1;

void save_model(const MultitaskModel& model, const std::string& path);
void save_model(const MlpClassifier& model, const std::string& path);

// Inspects the "kind" tag; throws ValidationError when it does not match
// the requested type.
MultitaskModel load_multitask_model(const std::string& path);
MlpClassifier load_mlp_model(const std::string& path);

std::string model_kind(const std::string& path);

} // namespace heartml::models
