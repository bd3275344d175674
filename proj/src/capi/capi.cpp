#include "heartml/heartml.h"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "core/errors.hpp"
#include "data/dataset.hpp"
#include "data/features.hpp"
#include "models/model_io.hpp"
#include "report/experiment.hpp"

using heartml::core::ErrorCode;
using heartml::core::HeartmlError;
using heartml::core::ValidationError;
using nlohmann::json;

struct hml_dataset {
    heartml::data::RawDataset data;
};

struct hml_matrix {
    heartml::data::FeatureMatrix matrix;
};

struct hml_model {
    std::string kind; // "multitask" or "mlp"
    heartml::models::MultitaskModel multitask;
    heartml::models::MlpClassifier mlp;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
hml_status guarded(Fn&& fn) {
    try {
        fn();
        return HML_OK;
    } catch (const HeartmlError& error) {
        g_last_error = error.what();
        return static_cast<hml_status>(static_cast<int>(error.code()));
    } catch (const json::exception& error) {
        g_last_error = error.what();
        return HML_ERR_VALIDATION;
    } catch (const std::exception& error) {
        g_last_error = error.what();
        return HML_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return HML_ERR_INTERNAL;
    }
}

void require(bool condition, const char* message) {
    if (!condition) throw ValidationError(message);
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

const heartml::data::FeatureMatrix& matrix_of(const hml_matrix* matrix) {
    require(matrix != nullptr, "matrix handle is null");
    return matrix->matrix;
}

} // namespace

extern "C" {

const char* hml_version(void) { return heartml::report::kToolVersion; }

const char* hml_last_error(void) { return g_last_error.c_str(); }

void hml_string_free(char* text) { std::free(text); }

hml_status hml_dataset_load(const char* csv_path, hml_dataset** out) {
    return guarded([&] {
        require(csv_path != nullptr, "csv_path is null");
        require(out != nullptr, "out parameter is null");
        auto handle = std::make_unique<hml_dataset>();
        handle->data = heartml::data::load_raw_dataset(csv_path);
        *out = handle.release();
    });
}

hml_status hml_dataset_row_count(const hml_dataset* dataset, size_t* out) {
    return guarded([&] {
        require(dataset != nullptr, "dataset handle is null");
        require(out != nullptr, "out parameter is null");
        *out = dataset->data.records.size();
    });
}

hml_status hml_dataset_label_counts(const hml_dataset* dataset, size_t* healthy,
                                    size_t* disease) {
    return guarded([&] {
        require(dataset != nullptr, "dataset handle is null");
        require(healthy != nullptr && disease != nullptr, "out parameter is null");
        *healthy = dataset->data.count_label(0);
        *disease = dataset->data.count_label(1);
    });
}

void hml_dataset_free(hml_dataset* dataset) { delete dataset; }

hml_status hml_matrix_from_dataset(const hml_dataset* dataset, int apply_minmax,
                                   hml_matrix** out) {
    return guarded([&] {
        require(dataset != nullptr, "dataset handle is null");
        require(out != nullptr, "out parameter is null");
        auto handle = std::make_unique<hml_matrix>();
        if (apply_minmax != 0) {
            handle->matrix = heartml::data::preprocess(dataset->data).matrix;
        } else {
            handle->matrix = heartml::data::engineer_features(dataset->data).matrix;
        }
        *out = handle.release();
    });
}

hml_status hml_matrix_dims(const hml_matrix* matrix, size_t* rows, size_t* cols) {
    return guarded([&] {
        const auto& m = matrix_of(matrix);
        require(rows != nullptr && cols != nullptr, "out parameter is null");
        *rows = m.rows;
        *cols = m.cols;
    });
}

hml_status hml_matrix_column_name(const hml_matrix* matrix, size_t column,
                                  char** out) {
    return guarded([&] {
        const auto& m = matrix_of(matrix);
        require(out != nullptr, "out parameter is null");
        require(column < m.column_names.size(), "column index out of range");
        *out = copy_string(m.column_names[column]);
    });
}

hml_status hml_matrix_export_csv(const hml_matrix* matrix, const char* path) {
    return guarded([&] {
        const auto& m = matrix_of(matrix);
        require(path != nullptr, "path is null");
        heartml::data::write_feature_matrix_csv(m, path);
    });
}

void hml_matrix_free(hml_matrix* matrix) { delete matrix; }

hml_status hml_model_train(const hml_matrix* matrix, const char* config_json,
                           hml_model** out) {
    return guarded([&] {
        const auto& m = matrix_of(matrix);
        require(out != nullptr, "out parameter is null");
        json doc = json::object();
        if (config_json != nullptr && config_json[0] != '\0') {
            doc = json::parse(config_json);
        }
        require(doc.is_object(), "model config must be a JSON object");
        const std::string kind = doc.value("kind", "multitask");
        const std::uint64_t seed = doc.value("seed", std::uint64_t{7});
        const json inner = doc.value("config", json::object());

        auto handle = std::make_unique<hml_model>();
        handle->kind = kind;
        if (kind == "multitask") {
            const auto config = heartml::models::MultitaskConfig::from_json(inner);
            handle->multitask.train(m, config, seed);
        } else if (kind == "mlp") {
            const auto config = heartml::models::MlpConfig::from_json(inner);
            handle->mlp.train(m, config, seed);
        } else {
            throw ValidationError("model kind must be multitask or mlp, got '" +
                                  kind + "'");
        }
        *out = handle.release();
    });
}

hml_status hml_model_load(const char* path, hml_model** out) {
    return guarded([&] {
        require(path != nullptr, "path is null");
        require(out != nullptr, "out parameter is null");
        auto handle = std::make_unique<hml_model>();
        handle->kind = heartml::models::model_kind(path);
        if (handle->kind == "multitask") {
            handle->multitask = heartml::models::load_multitask_model(path);
        } else {
            handle->mlp = heartml::models::load_mlp_model(path);
        }
        *out = handle.release();
    });
}

hml_status hml_model_save(const hml_model* model, const char* path) {
    return guarded([&] {
        require(model != nullptr, "model handle is null");
        require(path != nullptr, "path is null");
        if (model->kind == "multitask") {
            heartml::models::save_model(model->multitask, path);
        } else {
            heartml::models::save_model(model->mlp, path);
        }
    });
}

hml_status hml_model_predict(const hml_model* model, const hml_matrix* matrix,
                             double* out, size_t out_len) {
    return guarded([&] {
        require(model != nullptr, "model handle is null");
        const auto& m = matrix_of(matrix);
        require(out != nullptr, "out parameter is null");
        require(out_len >= m.rows, "output buffer smaller than the row count");
        const std::vector<double> probs = model->kind == "multitask"
                                              ? model->multitask.predict_proba(m)
                                              : model->mlp.predict_proba(m);
        std::memcpy(out, probs.data(), probs.size() * sizeof(double));
    });
}

hml_status hml_model_latent_dim(const hml_model* model, size_t* out) {
    return guarded([&] {
        require(model != nullptr, "model handle is null");
        require(out != nullptr, "out parameter is null");
        require(model->kind == "multitask", "model has no latent space");
        *out = model->multitask.config().latent_dim;
    });
}

void hml_model_free(hml_model* model) { delete model; }

hml_status hml_run_command(const char* command, const char* config_json,
                           char** out_summary_json) {
    return guarded([&] {
        require(command != nullptr, "command is null");
        require(out_summary_json != nullptr, "out parameter is null");
        heartml::report::ExperimentConfig config;
        if (config_json != nullptr && config_json[0] != '\0') {
            config.merge_json(json::parse(config_json));
        }
        const json summary = heartml::report::run_command(command, config);
        *out_summary_json = copy_string(summary.dump(2));
    });
}

} // extern "C"
