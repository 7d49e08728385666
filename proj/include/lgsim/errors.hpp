#pragma once

#include <stdexcept>
#include <string>

namespace lgsim {

struct BasisMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotInvolutory : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OrthogonalPostselection : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroIntensity : std::domain_error {
    using std::domain_error::domain_error;
};

struct NoRealRoot : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroCoupling : std::domain_error {
    using std::domain_error::domain_error;
};

struct BenchParseError : std::runtime_error {
    int line;
    BenchParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace lgsim
