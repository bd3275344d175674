#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "data/dataset.hpp"
#include "data/features.hpp"
#include "data/schema.hpp"

using namespace heartml;

namespace {

const std::string kDataPath = HEARTML_DATA_CSV;

data::RawDataset& canonical_dataset() {
    static data::RawDataset dataset = data::load_raw_dataset(kDataPath);
    return dataset;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("token mappings round-trip and reject unknown values") {
    CHECK(data::sex_from_token("M", "t") == data::Sex::male);
    CHECK(data::sex_token(data::Sex::female) == "F");
    CHECK(data::chest_pain_from_token("ASY", "t") == data::ChestPain::asy);
    CHECK(data::resting_ecg_from_token("LVH", "t") == data::RestingEcg::lvh);
    CHECK(data::st_slope_from_token("Flat", "t") == data::StSlope::flat);
    CHECK(data::exercise_angina_from_token("Y", "t"));
    CHECK_THROWS_AS(data::sex_from_token("X", "t"), core::ValidationError);
    CHECK_THROWS_AS(data::chest_pain_from_token("asy", "t"), core::ValidationError);
    CHECK_THROWS_AS(data::st_slope_from_token("", "t"), core::ValidationError);
}

TEST_CASE("validate_record enforces the documented ranges") {
    data::RawRecord record;
    record.age = 54;
    record.resting_bp = 120;
    record.cholesterol = 200;
    record.max_hr = 150;
    record.oldpeak = 1.0;
    record.label = 1;
    data::validate_record(record, "t");

    data::RawRecord bad = record;
    bad.age = 0;
    CHECK_THROWS_AS(data::validate_record(bad, "t"), core::ValidationError);
    bad = record;
    bad.max_hr = 59;
    CHECK_THROWS_AS(data::validate_record(bad, "t"), core::ValidationError);
    bad = record;
    bad.max_hr = 203;
    CHECK_THROWS_AS(data::validate_record(bad, "t"), core::ValidationError);
    bad = record;
    bad.oldpeak = -11.0;
    CHECK_THROWS_AS(data::validate_record(bad, "t"), core::ValidationError);
    bad = record;
    bad.label = 2;
    CHECK_THROWS_AS(data::validate_record(bad, "t"), core::ValidationError);
}

TEST_CASE("canonical dataset loads with the published composition") {
    const data::RawDataset& dataset = canonical_dataset();
    CHECK(dataset.records.size() == 918);
    CHECK(dataset.count_label(1) == 508);
    CHECK(dataset.count_label(0) == 410);
    CHECK(dataset.count_zero_cholesterol() == 172);
}

TEST_CASE("loader rejects a wrong header and malformed rows") {
    const auto path = temp_file("heartml_bad_header.csv");
    {
        std::ofstream out(path);
        out << "Age,Sex\n40,M\n";
    }
    CHECK_THROWS_AS((void)data::load_raw_dataset(path.string()), core::ValidationError);

    {
        std::ofstream out(path);
        out << data::kExpectedHeader << "\n";
        out << "40,M,ATA,140,289,0,Normal,172,N,0,Up\n"; // 11 fields, not 12
    }
    CHECK_THROWS_AS((void)data::load_raw_dataset(path.string()), core::ValidationError);

    {
        std::ofstream out(path);
        out << data::kExpectedHeader << "\n";
    }
    CHECK_THROWS_AS((void)data::load_raw_dataset(path.string()), core::ValidationError);
    std::filesystem::remove(path);

    CHECK_THROWS_AS((void)data::load_raw_dataset("/nonexistent/file.csv"),
                    core::IoError);
}

TEST_CASE("dataset write and reload round-trips") {
    const data::RawDataset& dataset = canonical_dataset();
    const auto path = temp_file("heartml_roundtrip.csv");
    data::write_raw_dataset(dataset, path.string());
    const data::RawDataset reloaded = data::load_raw_dataset(path.string());
    REQUIRE(reloaded.records.size() == dataset.records.size());
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        CHECK(reloaded.records[i].age == dataset.records[i].age);
        CHECK(reloaded.records[i].oldpeak == dataset.records[i].oldpeak);
        CHECK(reloaded.records[i].label == dataset.records[i].label);
    }
    std::filesystem::remove(path);
}

TEST_CASE("oldpeak formatting matches the source style") {
    CHECK(data::format_oldpeak(0.0) == "0");
    CHECK(data::format_oldpeak(1.0) == "1");
    CHECK(data::format_oldpeak(1.5) == "1.5");
    CHECK(data::format_oldpeak(-0.5) == "-0.5");
}

TEST_CASE("bin_index follows the threshold rules") {
    const data::BinRule rule{40.0, 60.0};
    CHECK(data::bin_index(39.9, rule) == 0);
    CHECK(data::bin_index(40.0, rule) == 1);
    CHECK(data::bin_index(59.9, rule) == 1);
    CHECK(data::bin_index(60.0, rule) == 2);
    data::BinningSpec bad;
    bad.age = {60.0, 40.0};
    CHECK_THROWS_AS(bad.validate(), core::ValidationError);
}

TEST_CASE("one_hot and label_encode reject unknown tokens") {
    const auto vec = data::one_hot("ATA", data::kChestPainTokens, "t");
    REQUIRE(vec.size() == 4);
    CHECK(vec[1] == 1.0);
    CHECK(vec[0] + vec[2] + vec[3] == 0.0);
    CHECK(data::label_encode("Y", data::kExerciseAnginaTokens, "t") == 1);
    CHECK_THROWS_AS((void)data::one_hot("XX", data::kChestPainTokens, "t"),
                    core::ValidationError);
}

TEST_CASE("engineered matrix has the pinned 24-column layout") {
    const auto& names = data::feature_column_names();
    REQUIRE(names.size() == data::kFeatureCount);
    CHECK(names[0] == "age_bin_low");
    CHECK(names[9] == "chest_pain_ta");
    CHECK(names[10] == "chest_pain_ata");
    CHECK(names[data::kMaxHrColumn] == "max_hr");
    CHECK(names[data::kOldpeakColumn] == "oldpeak");

    const data::EngineeredData engineered = data::engineer_features(canonical_dataset());
    CHECK(engineered.matrix.rows == 918);
    CHECK(engineered.matrix.cols == data::kFeatureCount);
    CHECK(engineered.matrix.column_names == names);
    CHECK(engineered.zero_cholesterol_warnings == 172);
}

TEST_CASE("first canonical row encodes to the hand-computed vector") {
    // 40,M,ATA,140,289,0,Normal,172,N,0,Up
    const data::EngineeredData engineered = data::engineer_features(canonical_dataset());
    const double* row = engineered.matrix.row(0);
    // age 40 -> mid bin
    CHECK(row[0] == 0.0);
    CHECK(row[1] == 1.0);
    CHECK(row[2] == 0.0);
    // resting bp 140 -> high bin
    CHECK(row[3] == 0.0);
    CHECK(row[4] == 0.0);
    CHECK(row[5] == 1.0);
    // cholesterol 289 -> high bin
    CHECK(row[6] == 0.0);
    CHECK(row[7] == 0.0);
    CHECK(row[8] == 1.0);
    // chest pain ATA
    CHECK(row[9] == 0.0);
    CHECK(row[10] == 1.0);
    CHECK(row[11] == 0.0);
    CHECK(row[12] == 0.0);
    // resting ecg Normal
    CHECK(row[13] == 1.0);
    CHECK(row[14] == 0.0);
    CHECK(row[15] == 0.0);
    // st slope Up
    CHECK(row[16] == 1.0);
    CHECK(row[17] == 0.0);
    CHECK(row[18] == 0.0);
    // sex male, no angina, fasting 0
    CHECK(row[19] == 1.0);
    CHECK(row[20] == 0.0);
    CHECK(row[21] == 0.0);
    // raw numeric columns
    CHECK(row[data::kMaxHrColumn] == 172.0);
    CHECK(row[data::kOldpeakColumn] == 0.0);
    CHECK(engineered.matrix.labels[0] == 0);
}

TEST_CASE("every row has valid one-hot groups") {
    const data::EngineeredData engineered = data::engineer_features(canonical_dataset());
    const std::vector<std::pair<std::size_t, std::size_t>> groups = {
        {0, 3}, {3, 3}, {6, 3}, {9, 4}, {13, 3}, {16, 3}};
    for (std::size_t r = 0; r < engineered.matrix.rows; ++r) {
        const double* row = engineered.matrix.row(r);
        for (const auto& [start, width] : groups) {
            double sum = 0.0;
            for (std::size_t c = start; c < start + width; ++c) {
                CHECK((row[c] == 0.0 || row[c] == 1.0));
                sum += row[c];
            }
            CHECK(sum == 1.0);
        }
        for (std::size_t c = 19; c < 22; ++c) CHECK((row[c] == 0.0 || row[c] == 1.0));
    }
}

TEST_CASE("min-max scaler fits selected rows only and transforms affinely") {
    data::FeatureMatrix m = data::FeatureMatrix::zeros(4, 2);
    m.column_names = {"a", "b"};
    m.labels = {0, 0, 1, 1};
    const double values[4][2] = {{0.0, 10.0}, {5.0, 20.0}, {10.0, 30.0}, {100.0, 40.0}};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 2; ++c) m.at(r, c) = values[r][c];

    data::MinMaxScaler scaler;
    const std::vector<std::size_t> cols = {0};
    const std::vector<std::size_t> rows = {0, 1, 2};
    scaler.fit(m, cols, rows);
    CHECK(scaler.minimums()[0] == 0.0);
    CHECK(scaler.maximums()[0] == 10.0);

    data::FeatureMatrix t = scaler.transformed(m);
    CHECK(t.at(1, 0) == 0.5);
    CHECK(t.at(3, 0) == 10.0); // outside the fit range extrapolates
    CHECK(t.at(3, 1) == 40.0); // untouched column

    const nlohmann::json doc = scaler.to_json();
    const data::MinMaxScaler restored = data::MinMaxScaler::from_json(doc);
    CHECK(restored.minimums() == scaler.minimums());
    CHECK(restored.maximums() == scaler.maximums());
    CHECK(restored.columns() == scaler.columns());
}

TEST_CASE("scaler maps a constant column to zero") {
    data::FeatureMatrix m = data::FeatureMatrix::zeros(3, 1);
    m.column_names = {"c"};
    m.labels = {0, 1, 0};
    for (std::size_t r = 0; r < 3; ++r) m.at(r, 0) = 7.0;
    data::MinMaxScaler scaler;
    const std::vector<std::size_t> cols = {0};
    scaler.fit(m, cols);
    data::FeatureMatrix t = scaler.transformed(m);
    for (std::size_t r = 0; r < 3; ++r) CHECK(t.at(r, 0) == 0.0);
}

TEST_CASE("preprocess scales the numeric columns into the unit interval") {
    const data::PreprocessResult processed = data::preprocess(canonical_dataset());
    double lo_hr = 1.0, hi_hr = 0.0, lo_op = 1.0, hi_op = 0.0;
    for (std::size_t r = 0; r < processed.matrix.rows; ++r) {
        const double hr = processed.matrix.at(r, data::kMaxHrColumn);
        const double op = processed.matrix.at(r, data::kOldpeakColumn);
        CHECK(hr >= 0.0);
        CHECK(hr <= 1.0);
        CHECK(op >= 0.0);
        CHECK(op <= 1.0);
        lo_hr = std::min(lo_hr, hr);
        hi_hr = std::max(hi_hr, hr);
        lo_op = std::min(lo_op, op);
        hi_op = std::max(hi_op, op);
    }
    CHECK(lo_hr == 0.0);
    CHECK(hi_hr == 1.0);
    CHECK(lo_op == 0.0);
    CHECK(hi_op == 1.0);
}

TEST_CASE("feature matrix subset keeps rows aligned with labels") {
    const data::EngineeredData engineered = data::engineer_features(canonical_dataset());
    const std::vector<std::size_t> picks = {0, 10, 917};
    const data::FeatureMatrix sub = engineered.matrix.subset(picks);
    REQUIRE(sub.rows == 3);
    CHECK(sub.cols == data::kFeatureCount);
    for (std::size_t i = 0; i < picks.size(); ++i) {
        CHECK(sub.labels[i] == engineered.matrix.labels[picks[i]]);
        for (std::size_t c = 0; c < sub.cols; ++c) {
            CHECK(sub.at(i, c) == engineered.matrix.at(picks[i], c));
        }
    }
}

TEST_CASE("feature csv export writes header plus one line per row") {
    const data::PreprocessResult processed = data::preprocess(canonical_dataset());
    const auto path = temp_file("heartml_features.csv");
    data::write_feature_matrix_csv(processed.matrix, path.string());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("age_bin_low,", 0) == 0);
    CHECK(header.find(",label") != std::string::npos);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++lines;
    }
    CHECK(lines == 918);
    std::filesystem::remove(path);
}
