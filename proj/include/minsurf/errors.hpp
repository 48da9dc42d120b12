#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace minsurf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double last_value)
        : Error(what), last_value_(last_value) {}
    /// Last residual or disagreement between successive estimates.
    double last_value() const noexcept { return last_value_; }

private:
    double last_value_;
};

class BracketInvalid : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column, std::vector<std::string> expected);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

class SingularityHit : public Error {
public:
    using Error::Error;
};

class GradientNotZero : public Error {
public:
    using Error::Error;
};

class NotImmersed : public Error {
public:
    using Error::Error;
};

class NotConformal : public Error {
public:
    using Error::Error;
};

class PeriodObstruction : public Error {
public:
    PeriodObstruction(const std::string& what, std::size_t generator, double real_magnitude,
                      double imag_magnitude)
        : Error(what), generator_(generator), real_(real_magnitude), imag_(imag_magnitude) {}
    std::size_t generator() const noexcept { return generator_; }
    double real_magnitude() const noexcept { return real_; }
    double imag_magnitude() const noexcept { return imag_; }

private:
    std::size_t generator_;
    double real_;
    double imag_;
};

class CommonZero : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class NotRational : public Error {
public:
    using Error::Error;
};

class NonPositiveScale : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NonPositiveRadius : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DomainViolation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class MaskNotConnected : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace minsurf
