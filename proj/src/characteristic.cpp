#include "piezstab/characteristic.hpp"

#include "piezstab/csvio.hpp"

#include <cmath>

namespace piezstab {

SpectralData sigma_pm(const MaterialParams& m) {
    SpectralData out;
    const Rational rho = m.rho.exact, alpha = m.alpha.exact, beta = m.beta.exact,
                   gamma = m.gamma.exact, mu = m.mu.exact, alpha1 = m.alpha1.exact;

    Rational diff = rho * beta - mu * alpha;
    out.discriminant = diff * diff + 4 * gamma * gamma * beta * beta * mu * rho;
    out.A = rho * beta + mu * alpha;

    Surd root = Surd::sqrt_of(out.discriminant);
    Rational half = Rational(1) / (2 * beta * alpha1);
    out.sigma_plus_sq = (Surd(out.A) + root) * Surd(half);
    out.sigma_minus_sq = (Surd(out.A) - root) * Surd(half);

    out.sigma_plus = std::sqrt(out.sigma_plus_sq.to_double());
    out.sigma_minus = std::sqrt(out.sigma_minus_sq.to_double());

    out.coupled = m.coupled();
    if (out.coupled) {
        // b_pm = (alpha*mu - rho*beta -++ sqrt(D)) / (2*beta*gamma*mu)
        Rational scale = Rational(1) / (2 * beta * gamma * mu);
        out.b_plus_exact = (Surd(mu * alpha - rho * beta) + root) * Surd(scale);
        out.b_minus_exact = (Surd(mu * alpha - rho * beta) - root) * Surd(scale);
        out.b_plus = out.b_plus_exact.to_double();
        out.b_minus = out.b_minus_exact.to_double();
    }
    return out;
}

std::pair<double, double> b_pm(const MaterialParams& m) {
    if (!m.coupled()) throw DecoupledGamma("b_pm requires gamma > 0");
    SpectralData s = sigma_pm(m);
    return {s.b_plus, s.b_minus};
}

std::complex<double> char_poly(std::complex<double> x, double lambda, const MaterialParams& m) {
    const double a1b = m.alpha1.approx * m.beta.approx;
    const double A = m.rho.approx * m.beta.approx + m.mu.approx * m.alpha.approx;
    const double mr = m.mu.approx * m.rho.approx;
    const double l2 = lambda * lambda;
    std::complex<double> x2 = x * x;
    return a1b * x2 * x2 + l2 * A * x2 + mr * l2 * l2;
}

std::array<std::complex<double>, 4> char_poly_roots(double lambda, const MaterialParams& m) {
    if (lambda == 0.0) throw std::invalid_argument("char_poly_roots requires lambda != 0");
    SpectralData s = sigma_pm(m);
    double kp = lambda * s.sigma_plus, km = lambda * s.sigma_minus;
    return {std::complex<double>(0, kp), std::complex<double>(0, -kp),
            std::complex<double>(0, km), std::complex<double>(0, -km)};
}

Eigen::Matrix4d generator_matrix(double lambda, const MaterialParams& m) {
    const double l2 = lambda * lambda;
    const double rho = m.rho.approx, alpha = m.alpha.approx, beta = m.beta.approx,
                 gamma = m.gamma.approx, mu = m.mu.approx, alpha1 = m.alpha1.approx;
    Eigen::Matrix4d N = Eigen::Matrix4d::Zero();
    N(0, 1) = 1.0;
    N(1, 0) = -l2 * rho / alpha1;
    N(1, 2) = -l2 * gamma * mu / alpha1;
    N(2, 3) = 1.0;
    N(3, 0) = -l2 * rho * gamma / alpha1;
    N(3, 2) = -l2 * mu * alpha / (alpha1 * beta);
    return N;
}

Eigen::Matrix4d transfer_matrix(double s, double lambda, const MaterialParams& m) {
    if (!m.coupled()) throw DecoupledGamma("transfer_matrix requires gamma > 0");
    if (lambda == 0.0) throw std::invalid_argument("transfer_matrix requires lambda != 0");

    SpectralData sd = sigma_pm(m);
    const double kp = lambda * sd.sigma_plus, km = lambda * sd.sigma_minus;
    const double bp = sd.b_plus, bm = sd.b_minus;
    const double bd = bp - bm;
    const double cp = std::cos(s * kp), cm = std::cos(s * km);
    const double sp = std::sin(s * kp), sm = std::sin(s * km);

    Eigen::Matrix4d E;
    E(0, 0) = (bp * cm - bm * cp) / bd;
    E(0, 1) = (bp * kp * sm - bm * km * sp) / (km * kp * bd);
    E(0, 2) = (cp - cm) / bd;
    E(0, 3) = (km * sp - kp * sm) / (km * kp * bd);
    E(1, 0) = (kp * bm * sp - km * bp * sm) / bd;
    E(1, 1) = E(0, 0);
    E(1, 2) = (km * sm - kp * sp) / bd;
    E(1, 3) = E(0, 2);
    E(2, 0) = -bp * bm * E(0, 2);
    E(2, 1) = bp * bm * (kp * sm - km * sp) / (km * kp * bd);
    E(2, 2) = (bp * cp - bm * cm) / bd;
    E(2, 3) = (bp * km * sp - bm * kp * sm) / (km * kp * bd);
    E(3, 0) = -bp * bm * E(1, 2);
    E(3, 1) = -bp * bm * E(1, 3);
    E(3, 2) = (bm * km * sm - bp * kp * sp) / bd;
    E(3, 3) = E(2, 2);
    return E;
}

std::string transfer_sweep_csv(const std::vector<double>& svals, double lambda,
                               const MaterialParams& m) {
    CsvWriter csv;
    std::vector<std::string> header = {"s"};
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            header.push_back("E" + std::to_string(i) + std::to_string(j));
    csv.header(header);
    for (double s : svals) {
        Eigen::Matrix4d E = transfer_matrix(s, lambda, m);
        std::vector<double> row = {s};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) row.push_back(E(i, j));
        csv.row(row);
    }
    return csv.str();
}

}  // namespace piezstab
