#pragma once

#include <stdexcept>
#include <string>

namespace ajdn {

enum class ErrorKind {
    Argument,   // violated precondition on an argument
    Config,     // bad configuration value or file
    Data,       // malformed or non-finite input data
    Degenerate, // zero local variance or similar numeric degeneracy
    Numeric,    // non-positive denominator, failed factorisation
    Io,         // unreadable / unwritable path
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        fail(ErrorKind::Argument, message);
    }
}

} // namespace ajdn
