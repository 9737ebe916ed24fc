#pragma once

#include "piezstab/params.hpp"
#include "piezstab/surd.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace piezstab {

/// Closed-form frequency-domain data of the coupled piezoelectric layer.
///
/// The two positive numbers sigma_plus > sigma_minus are the inverse
/// characteristic speeds; their squares are the roots of
///   beta*alpha1*X^2 - (rho*beta + mu*alpha)*X + mu*rho = 0,
/// so sigma_pm^2 = (A +- sqrt(D)) / (2*beta*alpha1) with
///   A = rho*beta + mu*alpha,  D = (rho*beta - mu*alpha)^2 + 4*gamma^2*beta^2*mu*rho.
/// All identities are carried exactly in the quadratic field Q(sqrt(D)).
struct SpectralData {
    Rational discriminant;  // D, always positive for admissible materials
    Rational A;             // rho*beta + mu*alpha

    Surd sigma_plus_sq, sigma_minus_sq;
    double sigma_plus = 0.0, sigma_minus = 0.0;

    // Branch slopes of the (v,p) eigenvectors; defined only when gamma > 0.
    bool coupled = false;
    Surd b_plus_exact, b_minus_exact;
    double b_plus = 0.0, b_minus = 0.0;
};

SpectralData sigma_pm(const MaterialParams& m);

/// (b+, b-); throws DecoupledGamma when gamma = 0.
std::pair<double, double> b_pm(const MaterialParams& m);

/// Roots of alpha1*beta*x^4 + lambda^2*(rho*beta+mu*alpha)*x^2 + mu*rho*lambda^4,
/// ordered (+i k+, -i k+, +i k-, -i k-) with k_pm = lambda*sigma_pm. lambda != 0.
std::array<std::complex<double>, 4> char_poly_roots(double lambda, const MaterialParams& m);

/// Value of the quartic above at x.
std::complex<double> char_poly(std::complex<double> x, double lambda, const MaterialParams& m);

/// First-order generator of the reduced (v, v_x, p, p_x) system at frequency lambda.
Eigen::Matrix4d generator_matrix(double lambda, const MaterialParams& m);

/// Closed-form exp(s * generator_matrix(lambda, m)). Requires gamma > 0 and lambda != 0.
Eigen::Matrix4d transfer_matrix(double s, double lambda, const MaterialParams& m);

/// CSV emitter: columns s, E11..E44 row-major.
std::string transfer_sweep_csv(const std::vector<double>& svals, double lambda,
                               const MaterialParams& m);

}  // namespace piezstab
