#include "data/schema.hpp"

#include "core/errors.hpp"

namespace heartml::data {

using heartml::core::ValidationError;

namespace {

template <std::size_t N>
std::size_t token_index(std::string_view token,
                        const std::array<std::string_view, N>& vocabulary,
                        const std::string& context, const char* field) {
    for (std::size_t i = 0; i < N; ++i) {
        if (vocabulary[i] == token) return i;
    }
    std::string allowed;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) allowed += ", ";
        allowed += vocabulary[i];
    }
    throw ValidationError(context + ": unknown " + field + " '" + std::string(token) +
                          "' (expected one of: " + allowed + ")");
}

} // namespace

Sex sex_from_token(std::string_view token, const std::string& context) {
    return static_cast<Sex>(token_index(token, kSexTokens, context, "Sex"));
}

ChestPain chest_pain_from_token(std::string_view token, const std::string& context) {
    return static_cast<ChestPain>(
        token_index(token, kChestPainTokens, context, "ChestPainType"));
}

RestingEcg resting_ecg_from_token(std::string_view token, const std::string& context) {
    return static_cast<RestingEcg>(
        token_index(token, kRestingEcgTokens, context, "RestingECG"));
}

StSlope st_slope_from_token(std::string_view token, const std::string& context) {
    return static_cast<StSlope>(token_index(token, kStSlopeTokens, context, "ST_Slope"));
}

bool exercise_angina_from_token(std::string_view token, const std::string& context) {
    return token_index(token, kExerciseAnginaTokens, context, "ExerciseAngina") == 1;
}

std::string_view sex_token(Sex value) {
    return kSexTokens[static_cast<std::size_t>(value)];
}
std::string_view chest_pain_token(ChestPain value) {
    return kChestPainTokens[static_cast<std::size_t>(value)];
}
std::string_view resting_ecg_token(RestingEcg value) {
    return kRestingEcgTokens[static_cast<std::size_t>(value)];
}
std::string_view st_slope_token(StSlope value) {
    return kStSlopeTokens[static_cast<std::size_t>(value)];
}
std::string_view exercise_angina_token(bool value) {
    return kExerciseAnginaTokens[value ? 1 : 0];
}

void validate_record(const RawRecord& record, const std::string& context) {
    if (record.age <= 0 || record.age > 120) {
        throw ValidationError(context + ": Age " + std::to_string(record.age) +
                              " outside (0, 120]");
    }
    if (record.resting_bp < 0 || record.resting_bp > 250) {
        throw ValidationError(context + ": RestingBP " + std::to_string(record.resting_bp) +
                              " outside [0, 250]");
    }
    if (record.cholesterol < 0 || record.cholesterol > 700) {
        throw ValidationError(context + ": Cholesterol " +
                              std::to_string(record.cholesterol) + " outside [0, 700]");
    }
    if (record.fasting_bs != 0 && record.fasting_bs != 1) {
        throw ValidationError(context + ": FastingBS must be 0 or 1");
    }
    if (record.max_hr < kMaxHrLow || record.max_hr > kMaxHrHigh) {
        throw ValidationError(context + ": MaxHR " + std::to_string(record.max_hr) +
                              " outside [" + std::to_string(kMaxHrLow) + ", " +
                              std::to_string(kMaxHrHigh) + "]");
    }
    if (record.oldpeak < -10.0 || record.oldpeak > 10.0) {
        throw ValidationError(context + ": Oldpeak outside [-10, 10]");
    }
    if (record.label != 0 && record.label != 1) {
        throw ValidationError(context + ": HeartDisease must be 0 or 1");
    }
}

} // namespace heartml::data
