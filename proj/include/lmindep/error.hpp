#pragma once

#include <stdexcept>
#include <string>

namespace lmindep {

/// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
    InvalidInput = 1,
    Configuration = 2,
    Domain = 3,
    SingularModel = 4,
    InvalidDensity = 5,
    DegenerateInput = 6,
    InvalidSpec = 7,
    Parse = 8,
    Io = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lmindep
