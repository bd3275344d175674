// Error taxonomy shared by the library, the C API and the CLI.
// The numeric codes double as process exit codes, so keep them stable.
#pragma once

#include <stdexcept>
#include <string>

namespace heartml::core {

enum class ErrorCode : int {
    ok = 0,
    validation = 2,
    io = 3,
    numeric = 4,
    internal = 5,
};

class HeartmlError : public std::runtime_error {
public:
    HeartmlError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ValidationError : public HeartmlError {
public:
    explicit ValidationError(const std::string& message)
        : HeartmlError(ErrorCode::validation, message) {}
};

class IoError : public HeartmlError {
public:
    explicit IoError(const std::string& message)
        : HeartmlError(ErrorCode::io, message) {}
};

class NumericError : public HeartmlError {
public:
    explicit NumericError(const std::string& message)
        : HeartmlError(ErrorCode::numeric, message) {}
};

class InternalError : public HeartmlError {
public:
    explicit InternalError(const std::string& message)
        : HeartmlError(ErrorCode::internal, message) {}
};

} // namespace heartml::core
