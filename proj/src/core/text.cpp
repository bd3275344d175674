#include "core/text.hpp"

#include <charconv>
#include <cstdio>

#include "core/errors.hpp"

namespace heartml::core {

namespace {

std::string quoted(std::string_view token) {
    return "'" + std::string(token) + "'";
}

} // namespace

int parse_int(std::string_view token, const std::string& context) {
    token = trim(token);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ValidationError(context + ": expected an integer, got " + quoted(token));
    }
    return value;
}

double parse_double(std::string_view token, const std::string& context) {
    token = trim(token);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ValidationError(context + ": expected a number, got " + quoted(token));
    }
    return value;
}

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw InternalError("format_double: value does not fit buffer");
    }
    return std::string(buffer, ptr);
}

std::string format_fixed(double value, int digits) {
    char buffer[64];
    int written = std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    if (written < 0 || written >= static_cast<int>(sizeof(buffer))) {
        throw InternalError("format_fixed: value does not fit buffer");
    }
    return std::string(buffer, static_cast<std::size_t>(written));
}

std::string_view trim(std::string_view text) {
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::vector<std::string> split_csv_line(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        std::string_view field = (pos == std::string_view::npos)
                                     ? line.substr(start)
                                     : line.substr(start, pos - start);
        if (!field.empty() && field.back() == '\r') field.remove_suffix(1);
        fields.emplace_back(field);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

} // namespace heartml::core
