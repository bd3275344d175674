// Small parsing and formatting helpers used by CSV and report writers.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace heartml::core {

// Strict integer / floating parses; the whole token must be consumed.
// `context` is prepended to error messages.
int parse_int(std::string_view token, const std::string& context);
double parse_double(std::string_view token, const std::string& context);

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

// Fixed precision, for human facing output.
std::string format_fixed(double value, int digits);

std::string_view trim(std::string_view text);

// Split on a delimiter; no quoting rules, fields are trimmed of CR only.
std::vector<std::string> split_csv_line(std::string_view line, char delimiter = ',');

} // namespace heartml::core
