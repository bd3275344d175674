// Record schema for the heart-failure table: typed categorical vocabularies
// plus range rules. Categorical order here is load-bearing, it fixes the
// one-hot column order of the engineered matrix.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace heartml::data {

enum class Sex : std::uint8_t { female = 0, male = 1 };
enum class ChestPain : std::uint8_t { ta = 0, ata = 1, nap = 2, asy = 3 };
enum class RestingEcg : std::uint8_t { normal = 0, st = 1, lvh = 2 };
enum class StSlope : std::uint8_t { up = 0, flat = 1, down = 2 };

inline constexpr std::array<std::string_view, 2> kSexTokens = {"F", "M"};
inline constexpr std::array<std::string_view, 4> kChestPainTokens = {"TA", "ATA", "NAP",
                                                                     "ASY"};
inline constexpr std::array<std::string_view, 3> kRestingEcgTokens = {"Normal", "ST",
                                                                      "LVH"};
inline constexpr std::array<std::string_view, 3> kStSlopeTokens = {"Up", "Flat", "Down"};
inline constexpr std::array<std::string_view, 2> kExerciseAnginaTokens = {"N", "Y"};

inline constexpr int kMaxHrLow = 60;
inline constexpr int kMaxHrHigh = 202;

struct RawRecord {
    int age = 0;
    Sex sex = Sex::female;
    ChestPain chest_pain = ChestPain::ta;
    int resting_bp = 0;
    int cholesterol = 0;
    int fasting_bs = 0;
    RestingEcg resting_ecg = RestingEcg::normal;
    int max_hr = 0;
    bool exercise_angina = false;
    double oldpeak = 0.0;
    StSlope st_slope = StSlope::up;
    int label = 0; // 0 = healthy, 1 = heart disease
};

Sex sex_from_token(std::string_view token, const std::string& context);
ChestPain chest_pain_from_token(std::string_view token, const std::string& context);
RestingEcg resting_ecg_from_token(std::string_view token, const std::string& context);
StSlope st_slope_from_token(std::string_view token, const std::string& context);
bool exercise_angina_from_token(std::string_view token, const std::string& context);

std::string_view sex_token(Sex value);
std::string_view chest_pain_token(ChestPain value);
std::string_view resting_ecg_token(RestingEcg value);
std::string_view st_slope_token(StSlope value);
std::string_view exercise_angina_token(bool value);

// Range and domain checks; throws ValidationError with `context` prefixed.
void validate_record(const RawRecord& record, const std::string& context);

} // namespace heartml::data
