#pragma once

#include <stdexcept>
#include <string>

namespace sle {

// Every failure the library can signal. The CLI maps these onto exit codes.
enum class ErrorKind {
    domain,
    pole,
    cut,
    degeneracy,
    accuracy,
    resonance,
    singular_point,
    step_underflow,
    reality,
    io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sle
