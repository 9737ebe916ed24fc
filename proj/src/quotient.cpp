#include "piezstab/quotient.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace piezstab {

const char* quotient_kind_name(QuotientKind kind) {
    switch (kind) {
        case QuotientKind::RationalOddOdd: return "RationalOddOdd";
        case QuotientKind::RationalMixedParity: return "RationalMixedParity";
        case QuotientKind::QuadraticSurd: return "QuadraticSurd";
        case QuotientKind::HigherAlgebraic: return "HigherAlgebraic";
        case QuotientKind::UserSuppliedIrrational: return "UserSuppliedIrrational";
        case QuotientKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* decay_regime_name(DecayRegime regime) {
    switch (regime) {
        case DecayRegime::NotStronglyStable: return "NotStronglyStable";
        case DecayRegime::Exponential: return "Exponential";
        case DecayRegime::Polynomial: return "Polynomial";
        case DecayRegime::UnknownRate: return "UnknownRate";
    }
    return "UnknownRate";
}

QuotientClass QuotientClass::user_supplied(double quotient, double varpi_bound) {
    if (varpi_bound < 2.0)
        throw std::invalid_argument("irrationality measure bound must be >= 2");
    QuotientClass c;
    c.kind = QuotientKind::UserSuppliedIrrational;
    c.quotient_value = quotient;
    c.varpi = varpi_bound;
    return c;
}

QuotientClass QuotientClass::unknown(double quotient) {
    QuotientClass c;
    c.kind = QuotientKind::Unknown;
    c.quotient_value = quotient;
    return c;
}

QuotientClass classify_quotient(const MaterialParams& m) {
    SigmaQuotient q = sigma_quotient(m);
    QuotientClass c;
    c.quotient_value = q.value;
    switch (q.form) {
        case SigmaQuotient::Form::Rational: {
            c.xi_plus = num(q.ratio);
            c.xi_minus = den(q.ratio);
            bool odd_odd = (c.xi_plus % 2 != 0) && (c.xi_minus % 2 != 0);
            c.kind = odd_odd ? QuotientKind::RationalOddOdd : QuotientKind::RationalMixedParity;
            break;
        }
        case SigmaQuotient::Form::QuadraticSurd:
            c.kind = QuotientKind::QuadraticSurd;
            c.exact_surd = q.surd;
            break;
        case SigmaQuotient::Form::DegreeFour:
            c.kind = QuotientKind::HigherAlgebraic;
            break;
    }
    return c;
}

double polynomial_rate(double varpi) {
    if (varpi < 2.0) throw std::invalid_argument("polynomial_rate requires varpi >= 2");
    return 2.0 / (4.0 * varpi - 4.0);
}

std::string DecayVerdict::describe() const {
    std::ostringstream out;
    out << decay_regime_name(regime);
    if (regime == DecayRegime::Polynomial) {
        if (ineffective)
            out << " (squared-norm exponent 1/2 - eps for every eps > 0, ineffective constant)";
        else
            out << " (squared-norm exponent " << rate << ")";
    }
    if (!witnesses.empty()) {
        out << " witnesses:";
        for (const auto& [np, nm] : witnesses) out << " (" << np << "," << nm << ")";
    }
    return out.str();
}

DecayVerdict parity_verdict(const Integer& xi_plus, const Integer& xi_minus,
                            long long witness_n_max) {
    if (xi_plus <= 0 || xi_minus <= 0)
        throw NotCoprime("parity_verdict requires positive integers");
    if (boost::multiprecision::gcd(xi_plus, xi_minus) != 1)
        throw NotCoprime("parity_verdict requires coprime integers");

    DecayVerdict v;
    bool plus_odd = xi_plus % 2 != 0, minus_odd = xi_minus % 2 != 0;
    if (plus_odd && minus_odd) {
        v.regime = DecayRegime::NotStronglyStable;
        for (Integer k = 1;; k += 2) {
            Integer np = (k * xi_plus - 1) / 2, nm = (k * xi_minus - 1) / 2;
            if (np > witness_n_max || nm > witness_n_max) break;
            v.witnesses.emplace_back(np.convert_to<long long>(), nm.convert_to<long long>());
        }
    } else {
        v.regime = DecayRegime::Exponential;
    }
    return v;
}

DecayVerdict decay_prediction(const QuotientClass& cls) {
    DecayVerdict v;
    switch (cls.kind) {
        case QuotientKind::RationalOddOdd:
        case QuotientKind::RationalMixedParity:
            return parity_verdict(cls.xi_plus, cls.xi_minus);
        case QuotientKind::QuadraticSurd:
            // quadratic irrationals are badly approximable: varpi = 2
            v.regime = DecayRegime::Polynomial;
            v.rate = polynomial_rate(2.0);
            break;
        case QuotientKind::HigherAlgebraic:
            // measure 2 with an ineffective constant: report 1/2 - eps
            v.regime = DecayRegime::Polynomial;
            v.rate = polynomial_rate(2.0);
            v.ineffective = true;
            break;
        case QuotientKind::UserSuppliedIrrational:
            v.regime = DecayRegime::Polynomial;
            v.rate = polynomial_rate(cls.varpi);
            break;
        case QuotientKind::Unknown:
            v.regime = DecayRegime::UnknownRate;
            break;
    }
    return v;
}

}  // namespace piezstab
