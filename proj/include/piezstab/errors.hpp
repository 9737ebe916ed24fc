#pragma once

#include <stdexcept>
#include <string>

namespace piezstab {

/// Operation needs the piezoelectric coupling but the config has gamma = 0.
struct DecoupledGamma : std::runtime_error {
    explicit DecoupledGamma(const std::string& what) : std::runtime_error(what) {}
};

/// The wave-speed quotient admits no odd/odd resonance pair.
struct NotResonant : std::runtime_error {
    explicit NotResonant(const std::string& what) : std::runtime_error(what) {}
};

struct NotCoprime : std::invalid_argument {
    explicit NotCoprime(const std::string& what) : std::invalid_argument(what) {}
};

/// The digit budget cannot certify the next continued-fraction quotient.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownConstant : std::invalid_argument {
    explicit UnknownConstant(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongVariant : std::invalid_argument {
    explicit WrongVariant(const std::string& what) : std::invalid_argument(what) {}
};

/// Request exceeds the dense solver budget.
struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

/// Energy trace unusable for a decay fit (underflow or no decay).
struct DegenerateTrace : std::runtime_error {
    explicit DegenerateTrace(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSolve : std::runtime_error {
    explicit SingularSolve(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace piezstab
