#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mumford {

// Input errors are malformed data or arguments (CLI exit 2); math errors are
// well-formed requests with no mathematical answer (CLI exit 1).
enum class ErrorKind { Math, Input };

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, ErrorKind kind = ErrorKind::Math)
        : std::runtime_error(message), code_(std::move(code)), kind_(kind) {}

    const std::string& code() const noexcept { return code_; }
    ErrorKind kind() const noexcept { return kind_; }

private:
    std::string code_;
    ErrorKind kind_;
};

inline Error input_error(const std::string& message) {
    return Error("InvalidInput", message, ErrorKind::Input);
}

}  // namespace mumford
