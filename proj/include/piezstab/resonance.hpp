#pragma once

#include "piezstab/characteristic.hpp"

#include <optional>
#include <vector>

namespace piezstab {

/// Exact arithmetic form of sigma_plus / sigma_minus.
///
/// The quotient is rational iff both D and (A + sqrt(D)) / (A - sqrt(D)) are
/// rational squares. When D is not a square the quotient still collapses into
/// Q(sqrt(D)) whenever A^2 - D (equivalently mu*rho/(beta*alpha1)) or
/// (A^2 - D)*D is a rational square; otherwise it has degree four over Q.
struct SigmaQuotient {
    enum class Form { Rational, QuadraticSurd, DegreeFour };
    Form form = Form::DegreeFour;
    Rational ratio;  // reduced fraction, Form::Rational only
    Surd surd;       // exact value, Form::QuadraticSurd only
    double value = 0.0;
};

SigmaQuotient sigma_quotient(const MaterialParams& m);

/// One solution of the resonance system: wavenumbers k_pm = (2n_pm+1)pi/(2 l1)
/// with k+/k- = sigma+/sigma-, at frequency lambda* = (2n+ + 1)pi/(2 l1 sigma+).
struct ResonanceWitness {
    long long n_plus = 0, n_minus = 0;
    double lambda_star = 0.0;
    double kappa_plus = 0.0, kappa_minus = 0.0;
    int sign = 1;  // branch choice that closes v(l1) = 0
};

/// All witnesses with n+, n- <= n_max, exact arithmetic on the quotient.
/// Throws NotResonant when the quotient is irrational or not odd/odd.
std::vector<ResonanceWitness> find_resonances(const MaterialParams& m, double l1, long long n_max);

/// Float-mode variant: accepts pairs with |(2n+ +1) sigma- - (2n- +1) sigma+| <= tol.
std::vector<ResonanceWitness> find_resonances(const MaterialParams& m, double l1, long long n_max,
                                              double tol);

/// v(x) = sin((2n+ +1) pi x / (2 l1)) + sign * sin((2n- +1) pi x / (2 l1)) on the grid.
std::vector<double> resonant_mode(const ResonanceWitness& w, double l1,
                                  const std::vector<double>& grid);

}  // namespace piezstab
