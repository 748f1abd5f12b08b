#pragma once

#include <stdexcept>
#include <string>

namespace logrs {

enum class ErrorKind {
    invalid_argument,    // bad parameters or malformed input
    unsupported_input,   // valid but outside what the library handles
    numeric_failure,     // a numerical routine failed to converge
    hits_ramification,   // a path passes through (or too near) a branch point
    threshold_not_found, // no convergence threshold within the scan bound
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ThresholdNotFound : public Error {
public:
    ThresholdNotFound(int largest_failing_n, const std::string& message)
        : Error(ErrorKind::threshold_not_found, message),
          largest_failing_n_(largest_failing_n) {}

    int largest_failing_n() const { return largest_failing_n_; }

private:
    int largest_failing_n_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorKind::invalid_argument, msg);
}
[[noreturn]] inline void throw_unsupported(const std::string& msg) {
    throw Error(ErrorKind::unsupported_input, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorKind::numeric_failure, msg);
}
[[noreturn]] inline void throw_ramification(const std::string& msg) {
    throw Error(ErrorKind::hits_ramification, msg);
}

const char* error_kind_name(ErrorKind kind);

} // namespace logrs
