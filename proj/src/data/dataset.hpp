// CSV ingestion for the raw table. The header row and every field are
// validated strictly; errors carry the file line number.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "data/schema.hpp"

namespace heartml::data {

inline constexpr const char* kExpectedHeader =
    "Age,Sex,ChestPainType,RestingBP,Cholesterol,FastingBS,RestingECG,MaxHR,"
    "ExerciseAngina,Oldpeak,ST_Slope,HeartDisease";

struct RawDataset {
    std::vector<RawRecord> records;
    std::string source_path;

    std::size_t size() const noexcept { return records.size(); }
    std::size_t count_label(int label) const;
    std::size_t count_zero_cholesterol() const;
};

RawRecord parse_record(const std::vector<std::string>& fields, const std::string& context);

RawDataset load_raw_dataset(const std::string& path);
void write_raw_dataset(const RawDataset& dataset, const std::string& path);

// Kaggle-style Oldpeak rendering: integral values print without a decimal
// point, everything else with the shortest round-trip form.
std::string format_oldpeak(double value);

} // namespace heartml::data
