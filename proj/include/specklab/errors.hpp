#pragma once

#include <stdexcept>
#include <string>

namespace specklab {

/// A parameter outside its admissible domain (k_ctx > n, even n where an odd
/// one is required, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configurable size guard was exceeded. Carries the bound that tripped.
class SizeLimitError : public std::length_error {
public:
    SizeLimitError(const std::string& what, unsigned long long limit)
        : std::length_error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit)
    {
    }
    unsigned long long limit() const noexcept { return limit_; }

private:
    unsigned long long limit_;
};

/// Input data violates a constraint of its type (a model that is not
/// normalized, a functional over a different scenario, ...).
class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed external input (unreadable file, bad JSON, missing field).
/// The message names the file position or field path.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace specklab
