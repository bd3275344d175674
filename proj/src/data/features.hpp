// Feature engineering: threshold binning for age / blood pressure /
// cholesterol, one-hot encodings for the nominal fields, binary encodings,
// and min-max scaling for the two continuous columns. The resulting 24
// column layout is fixed and documented in docs/formats.md.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "data/dataset.hpp"

namespace heartml::data {

// General labeled numeric table; the engineered matrix is one instance, the
// classical learners accept any column count.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major, rows x cols
    std::vector<int> labels;    // size rows
    std::vector<std::string> column_names; // size cols

    static FeatureMatrix zeros(std::size_t rows, std::size_t cols);

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    const double* row(std::size_t r) const { return values.data() + r * cols; }
    double* row(std::size_t r) { return values.data() + r * cols; }

    FeatureMatrix subset(std::span<const std::size_t> row_indices) const;
    void check_consistent(const std::string& context) const;
};

// Two thresholds split a value into three indicator columns:
// value < lower -> bin 0, lower <= value < upper -> bin 1, else bin 2.
struct BinRule {
    double lower = 0.0;
    double upper = 0.0;
};

struct BinningSpec {
    BinRule age{40.0, 60.0};
    BinRule resting_bp{120.0, 140.0};
    BinRule cholesterol{200.0, 240.0};

    static BinningSpec defaults() { return {}; }
    void validate() const;
};

int bin_index(double value, const BinRule& rule);

// One-hot over a closed vocabulary; unknown tokens raise ValidationError.
std::vector<double> one_hot(std::string_view token,
                            std::span<const std::string_view> vocabulary,
                            const std::string& context);

// Index of a token in a closed vocabulary (binary fields use 2 entries).
int label_encode(std::string_view token, std::span<const std::string_view> vocabulary,
                 const std::string& context);

inline constexpr std::size_t kFeatureCount = 24;
inline constexpr std::size_t kMaxHrColumn = 22;
inline constexpr std::size_t kOldpeakColumn = 23;

const std::vector<std::string>& feature_column_names();

class MinMaxScaler {
public:
    // Learns per-column min / max over `rows` (all rows when empty).
    void fit(const FeatureMatrix& matrix, std::span<const std::size_t> columns,
             std::span<const std::size_t> rows = {});
    // x -> (x - min) / (max - min); a constant column maps to 0.
    void transform(FeatureMatrix& matrix) const;
    FeatureMatrix transformed(const FeatureMatrix& matrix) const;

    bool fitted() const noexcept { return !columns_.empty(); }
    const std::vector<std::size_t>& columns() const noexcept { return columns_; }
    const std::vector<double>& minimums() const noexcept { return mins_; }
    const std::vector<double>& maximums() const noexcept { return maxs_; }

    nlohmann::json to_json() const;
    static MinMaxScaler from_json(const nlohmann::json& doc);

private:
    std::vector<std::size_t> columns_;
    std::vector<double> mins_;
    std::vector<double> maxs_;
};

struct EngineeredData {
    FeatureMatrix matrix; // max_hr / oldpeak still on their raw scale
    std::size_t zero_cholesterol_warnings = 0;
};

struct PreprocessResult {
    FeatureMatrix matrix; // numeric columns min-max scaled over all rows
    MinMaxScaler scaler;
    std::size_t zero_cholesterol_warnings = 0;
};

// Encoding only; scaling is left to the caller so cross-validation can fit
// scalers on training folds alone.
EngineeredData engineer_features(const RawDataset& dataset,
                                 const BinningSpec& spec = BinningSpec::defaults());

// Encoding plus self-fit min-max scaling; the standalone preprocessing entry
// point used by the export command.
PreprocessResult preprocess(const RawDataset& dataset,
                            const BinningSpec& spec = BinningSpec::defaults());

void write_feature_matrix_csv(const FeatureMatrix& matrix, const std::string& path);

} // namespace heartml::data
