#include "piezstab/resonance.hpp"

#include <cmath>
#include <numbers>

namespace piezstab {

SigmaQuotient sigma_quotient(const MaterialParams& m) {
    SigmaQuotient out;
    SpectralData sd = sigma_pm(m);
    out.value = sd.sigma_plus / sd.sigma_minus;

    const Rational& D = sd.discriminant;
    const Rational& A = sd.A;

    if (is_perfect_square(D)) {
        Rational d = rational_sqrt(D);
        Rational ratio_sq = (A + d) / (A - d);  // A > sqrt(D) since A^2 - D > 0
        if (is_perfect_square(ratio_sq)) {
            out.form = SigmaQuotient::Form::Rational;
            out.ratio = rational_sqrt(ratio_sq);
        } else {
            out.form = SigmaQuotient::Form::QuadraticSurd;
            out.surd = Surd::sqrt_of(ratio_sq);
        }
        return out;
    }

    Rational P = A * A - D;  // equals 4*beta*mu*rho*alpha1 > 0
    if (is_perfect_square(P)) {
        Rational e = rational_sqrt(P);
        out.form = SigmaQuotient::Form::QuadraticSurd;
        out.surd = (Surd(A) + Surd::sqrt_of(D)) / Surd(e);
        return out;
    }
    if (is_perfect_square(P * D)) {
        Rational mden = rational_sqrt(P * D);
        out.form = SigmaQuotient::Form::QuadraticSurd;
        out.surd = (Surd(D) + Surd(A) * Surd::sqrt_of(D)) / Surd(mden);
        return out;
    }
    out.form = SigmaQuotient::Form::DegreeFour;
    return out;
}

namespace {

ResonanceWitness make_witness(long long n_plus, long long n_minus, double l1, double sigma_plus) {
    ResonanceWitness w;
    w.n_plus = n_plus;
    w.n_minus = n_minus;
    const double pi = std::numbers::pi;
    w.kappa_plus = (2.0 * n_plus + 1.0) * pi / (2.0 * l1);
    w.kappa_minus = (2.0 * n_minus + 1.0) * pi / (2.0 * l1);
    w.lambda_star = w.kappa_plus / sigma_plus;
    w.sign = ((n_plus - n_minus) % 2 == 0) ? -1 : 1;
    return w;
}

}  // namespace

std::vector<ResonanceWitness> find_resonances(const MaterialParams& m, double l1,
                                              long long n_max) {
    SigmaQuotient q = sigma_quotient(m);
    if (q.form != SigmaQuotient::Form::Rational)
        throw NotResonant("sigma+/sigma- is irrational; no resonant pair exists");
    Integer xi_plus = num(q.ratio), xi_minus = den(q.ratio);
    if (xi_plus % 2 == 0 || xi_minus % 2 == 0)
        throw NotResonant("sigma+/sigma- = " + format_rational(q.ratio) +
                          " is not a ratio of odd integers");

    SpectralData sd = sigma_pm(m);
    std::vector<ResonanceWitness> out;
    for (Integer k = 1;; k += 2) {
        Integer np2 = k * xi_plus, nm2 = k * xi_minus;  // odd values 2n+1
        Integer n_plus = (np2 - 1) / 2, n_minus = (nm2 - 1) / 2;
        if (n_plus > n_max || n_minus > n_max) break;
        out.push_back(make_witness(n_plus.convert_to<long long>(),
                                   n_minus.convert_to<long long>(), l1, sd.sigma_plus));
    }
    return out;
}

std::vector<ResonanceWitness> find_resonances(const MaterialParams& m, double l1, long long n_max,
                                              double tol) {
    SpectralData sd = sigma_pm(m);
    std::vector<ResonanceWitness> out;
    for (long long np = 0; np <= n_max; ++np)
        for (long long nm = 0; nm <= n_max; ++nm) {
            double mismatch =
                (2.0 * np + 1.0) * sd.sigma_minus - (2.0 * nm + 1.0) * sd.sigma_plus;
            if (std::abs(mismatch) <= tol)
                out.push_back(make_witness(np, nm, l1, sd.sigma_plus));
        }
    return out;
}

std::vector<double> resonant_mode(const ResonanceWitness& w, double l1,
                                  const std::vector<double>& grid) {
    const double pi = std::numbers::pi;
    const double kp = (2.0 * w.n_plus + 1.0) * pi / (2.0 * l1);
    const double km = (2.0 * w.n_minus + 1.0) * pi / (2.0 * l1);
    std::vector<double> v;
    v.reserve(grid.size());
    for (double x : grid) v.push_back(std::sin(kp * x) + w.sign * std::sin(km * x));
    return v;
}

}  // namespace piezstab
