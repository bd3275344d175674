#include "data/features.hpp"

#include <fstream>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace heartml::data {

using heartml::core::IoError;
using heartml::core::ValidationError;

FeatureMatrix FeatureMatrix::zeros(std::size_t rows, std::size_t cols) {
    FeatureMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.values.assign(rows * cols, 0.0);
    m.labels.assign(rows, 0);
    m.column_names.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        m.column_names.push_back("f" + std::to_string(c));
    }
    return m;
}

FeatureMatrix FeatureMatrix::subset(std::span<const std::size_t> row_indices) const {
    FeatureMatrix out;
    out.rows = row_indices.size();
    out.cols = cols;
    out.column_names = column_names;
    out.values.reserve(out.rows * cols);
    out.labels.reserve(out.rows);
    for (std::size_t r : row_indices) {
        if (r >= rows) throw ValidationError("FeatureMatrix::subset: row index out of range");
        out.values.insert(out.values.end(), row(r), row(r) + cols);
        out.labels.push_back(labels[r]);
    }
    return out;
}

void FeatureMatrix::check_consistent(const std::string& context) const {
    if (values.size() != rows * cols) {
        throw ValidationError(context + ": value buffer does not match rows x cols");
    }
    if (labels.size() != rows) {
        throw ValidationError(context + ": label count does not match rows");
    }
    if (!column_names.empty() && column_names.size() != cols) {
        throw ValidationError(context + ": column name count does not match cols");
    }
}

void BinningSpec::validate() const {
    auto check = [](const BinRule& rule, const char* name) {
        if (!(rule.lower < rule.upper)) {
            throw ValidationError(std::string("BinningSpec: ") + name +
                                  " thresholds must satisfy lower < upper");
        }
    };
    check(age, "age");
    check(resting_bp, "resting_bp");
    check(cholesterol, "cholesterol");
}

int bin_index(double value, const BinRule& rule) {
    if (value < rule.lower) return 0;
    if (value < rule.upper) return 1;
    return 2;
}

std::vector<double> one_hot(std::string_view token,
                            std::span<const std::string_view> vocabulary,
                            const std::string& context) {
    std::vector<double> encoded(vocabulary.size(), 0.0);
    encoded[static_cast<std::size_t>(label_encode(token, vocabulary, context))] = 1.0;
    return encoded;
}

int label_encode(std::string_view token, std::span<const std::string_view> vocabulary,
                 const std::string& context) {
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
        if (vocabulary[i] == token) return static_cast<int>(i);
    }
    throw ValidationError(context + ": token '" + std::string(token) +
                          "' is not in the vocabulary");
}

const std::vector<std::string>& feature_column_names() {
    static const std::vector<std::string> names = {
        "age_bin_low",        "age_bin_mid",        "age_bin_high",
        "resting_bp_bin_low", "resting_bp_bin_mid", "resting_bp_bin_high",
        "cholesterol_bin_low","cholesterol_bin_mid","cholesterol_bin_high",
        "chest_pain_ta",      "chest_pain_ata",     "chest_pain_nap",
        "chest_pain_asy",     "resting_ecg_normal", "resting_ecg_st",
        "resting_ecg_lvh",    "st_slope_up",        "st_slope_flat",
        "st_slope_down",      "sex_male",           "exercise_angina",
        "fasting_bs",         "max_hr",             "oldpeak"};
    return names;
}

void MinMaxScaler::fit(const FeatureMatrix& matrix, std::span<const std::size_t> columns,
                       std::span<const std::size_t> rows) {
    if (columns.empty()) throw ValidationError("MinMaxScaler::fit: no columns given");
    std::vector<std::size_t> all_rows;
    if (rows.empty()) {
        all_rows.resize(matrix.rows);
        for (std::size_t r = 0; r < matrix.rows; ++r) all_rows[r] = r;
        rows = all_rows;
    }
    if (rows.empty()) throw ValidationError("MinMaxScaler::fit: no rows to fit on");
    columns_.assign(columns.begin(), columns.end());
    mins_.assign(columns.size(), 0.0);
    maxs_.assign(columns.size(), 0.0);
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        const std::size_t c = columns_[k];
        if (c >= matrix.cols) {
            throw ValidationError("MinMaxScaler::fit: column index out of range");
        }
        double lo = matrix.at(rows[0], c), hi = lo;
        for (std::size_t r : rows) {
            const double v = matrix.at(r, c);
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        mins_[k] = lo;
        maxs_[k] = hi;
    }
}

void MinMaxScaler::transform(FeatureMatrix& matrix) const {
    if (!fitted()) throw ValidationError("MinMaxScaler::transform: scaler is not fitted");
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        const std::size_t c = columns_[k];
        if (c >= matrix.cols) {
            throw ValidationError("MinMaxScaler::transform: column index out of range");
        }
        const double lo = mins_[k];
        const double span = maxs_[k] - lo;
        for (std::size_t r = 0; r < matrix.rows; ++r) {
            double& v = matrix.at(r, c);
            v = span == 0.0 ? 0.0 : (v - lo) / span;
        }
    }
}

FeatureMatrix MinMaxScaler::transformed(const FeatureMatrix& matrix) const {
    FeatureMatrix copy = matrix;
    transform(copy);
    return copy;
}

nlohmann::json MinMaxScaler::to_json() const {
    return {{"columns", columns_}, {"min", mins_}, {"max", maxs_}};
}

MinMaxScaler MinMaxScaler::from_json(const nlohmann::json& doc) {
    MinMaxScaler scaler;
    scaler.columns_ = doc.at("columns").get<std::vector<std::size_t>>();
    scaler.mins_ = doc.at("min").get<std::vector<double>>();
    scaler.maxs_ = doc.at("max").get<std::vector<double>>();
    if (scaler.columns_.size() != scaler.mins_.size() ||
        scaler.columns_.size() != scaler.maxs_.size()) {
        throw ValidationError("MinMaxScaler::from_json: inconsistent field lengths");
    }
    return scaler;
}

EngineeredData engineer_features(const RawDataset& dataset, const BinningSpec& spec) {
    spec.validate();
    if (dataset.records.empty()) {
        throw ValidationError("engineer_features: dataset has no records");
    }
    EngineeredData result;
    FeatureMatrix& m = result.matrix;
    m.rows = dataset.size();
    m.cols = kFeatureCount;
    m.column_names = feature_column_names();
    m.values.assign(m.rows * m.cols, 0.0);
    m.labels.resize(m.rows);

    for (std::size_t r = 0; r < dataset.size(); ++r) {
        const RawRecord& rec = dataset.records[r];
        double* row = m.row(r);
        row[bin_index(rec.age, spec.age)] = 1.0;
        row[3 + bin_index(rec.resting_bp, spec.resting_bp)] = 1.0;
        row[6 + bin_index(rec.cholesterol, spec.cholesterol)] = 1.0;
        if (rec.cholesterol == 0) ++result.zero_cholesterol_warnings;
        row[9 + static_cast<std::size_t>(rec.chest_pain)] = 1.0;
        row[13 + static_cast<std::size_t>(rec.resting_ecg)] = 1.0;
        row[16 + static_cast<std::size_t>(rec.st_slope)] = 1.0;
        row[19] = rec.sex == Sex::male ? 1.0 : 0.0;
        row[20] = rec.exercise_angina ? 1.0 : 0.0;
        row[21] = static_cast<double>(rec.fasting_bs);
        row[kMaxHrColumn] = static_cast<double>(rec.max_hr);
        row[kOldpeakColumn] = rec.oldpeak;
        m.labels[r] = rec.label;
    }
    return result;
}

PreprocessResult preprocess(const RawDataset& dataset, const BinningSpec& spec) {
    EngineeredData engineered = engineer_features(dataset, spec);
    PreprocessResult result;
    result.zero_cholesterol_warnings = engineered.zero_cholesterol_warnings;
    result.matrix = std::move(engineered.matrix);
    const std::size_t numeric_columns[] = {kMaxHrColumn, kOldpeakColumn};
    result.scaler.fit(result.matrix, numeric_columns);
    result.scaler.transform(result.matrix);
    return result;
}

void write_feature_matrix_csv(const FeatureMatrix& matrix, const std::string& path) {
    matrix.check_consistent("write_feature_matrix_csv");
    std::ofstream out(path);
    if (!out) throw IoError("features: cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < matrix.cols; ++c) {
        out << (c ? "," : "") << matrix.column_names[c];
    }
    out << ",label\n";
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        for (std::size_t c = 0; c < matrix.cols; ++c) {
            out << (c ? "," : "") << core::format_double(matrix.at(r, c));
        }
        out << "," << matrix.labels[r] << "\n";
    }
    if (!out) throw IoError("features: write to '" + path + "' failed");
}

} // namespace heartml::data
