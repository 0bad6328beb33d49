#pragma once

#include <stdexcept>
#include <string>

namespace qlmwkb {

// Stable error codes, mirrored one-to-one by the C API status values.
enum class errc : int {
    ok = 0,
    usage = 1,
    singular_leading_term = 2,
    missing_derivative = 3,
    singular_jet = 4,
    domain = 5,
    integration = 6,
    fit_quality = 7,
    bracket = 8,
    oracle = 9,
    io = 10,
    verification = 11,
    internal = 12,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(errc::usage, w) {}
};

struct SingularLeadingTermError : Error {
    explicit SingularLeadingTermError(const std::string& w) : Error(errc::singular_leading_term, w) {}
};

struct MissingDerivativeError : Error {
    explicit MissingDerivativeError(const std::string& w) : Error(errc::missing_derivative, w) {}
};

struct SingularJetError : Error {
    explicit SingularJetError(const std::string& w) : Error(errc::singular_jet, w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(errc::domain, w) {}
};

struct IntegrationError : Error {
    explicit IntegrationError(const std::string& w) : Error(errc::integration, w) {}
};

struct FitQualityError : Error {
    explicit FitQualityError(const std::string& w) : Error(errc::fit_quality, w) {}
};

struct BracketError : Error {
    explicit BracketError(const std::string& w) : Error(errc::bracket, w) {}
};

struct OracleError : Error {
    explicit OracleError(const std::string& w) : Error(errc::oracle, w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(errc::io, w) {}
};

struct VerificationError : Error {
    explicit VerificationError(const std::string& w) : Error(errc::verification, w) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error(errc::internal, w) {}
};

}  // namespace qlmwkb
