#include "data/dataset.hpp"

#include <cmath>
#include <fstream>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace heartml::data {

using heartml::core::IoError;
using heartml::core::ValidationError;

std::size_t RawDataset::count_label(int label) const {
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.label == label) ++n;
    }
    return n;
}

std::size_t RawDataset::count_zero_cholesterol() const {
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.cholesterol == 0) ++n;
    }
    return n;
}

RawRecord parse_record(const std::vector<std::string>& fields, const std::string& context) {
    if (fields.size() != 12) {
        throw ValidationError(context + ": expected 12 fields, got " +
                              std::to_string(fields.size()));
    }
    RawRecord record;
    record.age = core::parse_int(fields[0], context + " Age");
    record.sex = sex_from_token(core::trim(fields[1]), context);
    record.chest_pain = chest_pain_from_token(core::trim(fields[2]), context);
    record.resting_bp = core::parse_int(fields[3], context + " RestingBP");
    record.cholesterol = core::parse_int(fields[4], context + " Cholesterol");
    record.fasting_bs = core::parse_int(fields[5], context + " FastingBS");
    record.resting_ecg = resting_ecg_from_token(core::trim(fields[6]), context);
    record.max_hr = core::parse_int(fields[7], context + " MaxHR");
    record.exercise_angina = exercise_angina_from_token(core::trim(fields[8]), context);
    record.oldpeak = core::parse_double(fields[9], context + " Oldpeak");
    record.st_slope = st_slope_from_token(core::trim(fields[10]), context);
    record.label = core::parse_int(fields[11], context + " HeartDisease");
    validate_record(record, context);
    return record;
}

RawDataset load_raw_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("dataset: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("dataset: '" + path + "' is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kExpectedHeader) {
        throw ValidationError("dataset: '" + path + "' has an unexpected header: " + line);
    }

    RawDataset dataset;
    dataset.source_path = path;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (core::trim(line).empty()) continue;
        const std::string context = path + ":" + std::to_string(line_number);
        dataset.records.push_back(parse_record(core::split_csv_line(line), context));
    }
    if (dataset.records.empty()) {
        throw ValidationError("dataset: '" + path + "' contains no data rows");
    }
    return dataset;
}

std::string format_oldpeak(double value) {
    double integral = 0.0;
    if (std::modf(value, &integral) == 0.0 && std::fabs(value) < 1e9) {
        return std::to_string(static_cast<long long>(integral));
    }
    return core::format_double(value);
}

void write_raw_dataset(const RawDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("dataset: cannot open '" + path + "' for writing");
    out << kExpectedHeader << "\n";
    for (const auto& r : dataset.records) {
        out << r.age << ',' << sex_token(r.sex) << ',' << chest_pain_token(r.chest_pain)
            << ',' << r.resting_bp << ',' << r.cholesterol << ',' << r.fasting_bs << ','
            << resting_ecg_token(r.resting_ecg) << ',' << r.max_hr << ','
            << exercise_angina_token(r.exercise_angina) << ',' << format_oldpeak(r.oldpeak)
            << ',' << st_slope_token(r.st_slope) << ',' << r.label << "\n";
    }
    if (!out) throw IoError("dataset: write to '" + path + "' failed");
}

} // namespace heartml::data
