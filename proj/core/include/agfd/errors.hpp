#pragma once

#include <stdexcept>
#include <string>

namespace agfd {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments, malformed data, violated preconditions.
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// Request would exceed a hard memory/size guard.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

// Weight Gram matrix yy' is singular or too badly conditioned to invert.
class IllConditionedWeightsError : public Error {
public:
    IllConditionedWeightsError(const std::string& msg, double condition_number)
        : Error(msg), condition_number_(condition_number) {}
    double condition_number() const { return condition_number_; }

private:
    double condition_number_;
};

// A sampler was started from a point outside the posterior support.
class InitializationError : public Error {
public:
    explicit InitializationError(const std::string& msg) : Error(msg) {}
};

// Malformed scenario file or CSV document.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Filesystem failures (unreadable input, unwritable output).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace agfd
