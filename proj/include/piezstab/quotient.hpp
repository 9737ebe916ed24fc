#pragma once

#include "piezstab/resonance.hpp"

#include <string>
#include <utility>
#include <vector>

namespace piezstab {

enum class QuotientKind {
    RationalOddOdd,
    RationalMixedParity,
    QuadraticSurd,
    HigherAlgebraic,
    UserSuppliedIrrational,
    Unknown,
};

const char* quotient_kind_name(QuotientKind kind);

/// Arithmetic classification of sigma+/sigma-. Float values never influence
/// the kind; everything is decided on the exact rationals.
struct QuotientClass {
    QuotientKind kind = QuotientKind::Unknown;
    double quotient_value = 0.0;

    Integer xi_plus, xi_minus;  // coprime positive integers, rational kinds only
    Surd exact_surd;            // exact value, QuadraticSurd only
    double varpi = 0.0;         // irrationality-measure bound, UserSupplied only

    static QuotientClass user_supplied(double quotient, double varpi_bound);
    static QuotientClass unknown(double quotient);
};

QuotientClass classify_quotient(const MaterialParams& m);

enum class DecayRegime { NotStronglyStable, Exponential, Polynomial, UnknownRate };

const char* decay_regime_name(DecayRegime regime);

/// Predicted decay regime. For the polynomial regime `rate` is the exponent
/// on t for the squared energy norm, 2/(4*varpi - 4); `ineffective` marks the
/// higher-algebraic case where the exponent is 1/2 - eps for every eps > 0
/// with no effective constant.
struct DecayVerdict {
    DecayRegime regime = DecayRegime::UnknownRate;
    double rate = 0.0;
    bool ineffective = false;
    std::vector<std::pair<long long, long long>> witnesses;  // resonance pairs (n+, n-)

    std::string describe() const;
};

/// Parity rule for a reduced quotient xi+/xi-: both odd -> not strongly
/// stable (witnesses attached), mixed parity -> exponential.
DecayVerdict parity_verdict(const Integer& xi_plus, const Integer& xi_minus,
                            long long witness_n_max = 5);

DecayVerdict decay_prediction(const QuotientClass& cls);

/// Squared-norm decay exponent 2/(4*varpi - 4); varpi >= 2 required.
double polynomial_rate(double varpi);

}  // namespace piezstab
