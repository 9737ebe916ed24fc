#include "piezstab/spectral.hpp"

#include "piezstab/csvio.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <thread>

namespace piezstab {

namespace {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;
using VectorC = Eigen::VectorXcd;

void check_budget(const DiscreteSystem& sys) {
    if (sys.state_dim() > kDenseStateBudget)
        throw TooLarge("state dimension " + std::to_string(sys.state_dim()) +
                       " exceeds the dense budget " + std::to_string(kDenseStateBudget));
}

/// Energy-norm resolvent evaluation through the position-space reduction:
/// (i*l - A) w = f collapses to H(l) x = M f2 + i*l M f1 + D f1 with
/// H(l) = K - l^2 M + i*l D, and the adjoint solve reuses conj(H).
class StructuredResolvent {
  public:
    explicit StructuredResolvent(const DiscreteSystem& sys) : n_(sys.n_pos) {
        Kc_ = sys.K.cast<Complex>();
        Mc_ = sys.M.cast<Complex>();
        Dc_ = sys.D.cast<Complex>();
        kfac_.compute(sys.K);
        mfac_.compute(sys.M);
        if (kfac_.info() != Eigen::Success || mfac_.info() != Eigen::Success)
            throw SingularSolve("energy Gram factorization failed");
    }

    /// Largest energy-norm singular value of (i*l - A)^{-1}; NaN if the
    /// factorization at this ordinate fails.
    double norm_at(double lambda, int max_iter = 160, double tol = 1e-7) const {
        SparseC H = Kc_ - (lambda * lambda) * Mc_ + Complex(0.0, lambda) * Dc_;
        Eigen::SparseLU<SparseC> lu;
        lu.compute(H);
        if (lu.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();

        VectorC f1(n_), f2(n_);
        for (int i = 0; i < n_; ++i) {
            f1[i] = Complex(std::cos(0.7 * i + 0.3), std::sin(1.3 * i + 1.1));
            f2[i] = Complex(std::sin(0.4 * i + 2.0), std::cos(1.7 * i + 0.5));
        }
        normalize(f1, f2);

        double value = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            VectorC g1, g2;
            apply_resolvent(lu, lambda, f1, f2, g1, g2);
            double next = std::sqrt(std::max(0.0, energy_sq(g1, g2)));
            bool converged = (it > 3 && std::abs(next - value) <= tol * std::max(next, 1e-300));
            value = next;
            if (converged) break;
            // f <- normalized G^{-1} R^H G g
            VectorC h1 = Kc_ * g1, h2 = Mc_ * g2;
            VectorC y1, y2;
            apply_resolvent_adjoint(lu, lambda, h1, h2, y1, y2);
            f1 = solve_real(kfac_, y1);
            f2 = solve_real(mfac_, y2);
            normalize(f1, f2);
        }
        return value;
    }

  private:
    using RealFac = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

    static VectorC solve_real(const RealFac& fac, const VectorC& rhs) {
        Eigen::VectorXd re = fac.solve(rhs.real());
        Eigen::VectorXd im = fac.solve(rhs.imag());
        return re + Complex(0, 1) * im;
    }

    void apply_resolvent(const Eigen::SparseLU<SparseC>& lu, double lambda, const VectorC& f1,
                         const VectorC& f2, VectorC& x, VectorC& u) const {
        VectorC rhs = Mc_ * f2 + Complex(0, lambda) * (Mc_ * f1) + Dc_ * f1;
        x = lu.solve(rhs);
        u = Complex(0, lambda) * x - f1;
    }

    void apply_resolvent_adjoint(const Eigen::SparseLU<SparseC>& lu, double lambda,
                                 const VectorC& z1, const VectorC& z2, VectorC& w1,
                                 VectorC& w2) const {
        // solve conj(H) m = z1 - i*l z2 through the factorization of H
        VectorC rhs = (z1 - Complex(0, lambda) * z2).conjugate();
        VectorC m = lu.solve(rhs).conjugate();
        w2 = Mc_ * m;
        w1 = -Complex(0, lambda) * w2 + Dc_ * m - z2;
    }

    double energy_sq(const VectorC& a, const VectorC& b) const {
        return (a.dot(Kc_ * a) + b.dot(Mc_ * b)).real();
    }

    void normalize(VectorC& a, VectorC& b) const {
        double s = std::sqrt(std::max(energy_sq(a, b), 1e-300));
        a /= s;
        b /= s;
    }

    int n_;
    SparseC Kc_, Mc_, Dc_;
    RealFac kfac_, mfac_;
};

/// Dense fallback for systems whose energy form is only semidefinite on the
/// full space: works on the zero-mean reduction where the Gram is SPD.
class DenseResolvent {
  public:
    explicit DenseResolvent(const DiscreteSystem& sys) {
        ReducedSystem red = reduce_constant_mode(sys);
        Eigen::LLT<Eigen::MatrixXd> llt(red.gram);
        if (llt.info() != Eigen::Success)
            throw SingularSolve("reduced energy Gram is not positive definite");
        Eigen::MatrixXd L = llt.matrixL();
        Bc_ = red.generator.cast<Complex>();
        Lc_ = L.cast<Complex>();
    }

    double norm_at(double lambda) const {
        const int n = static_cast<int>(Bc_.rows());
        Eigen::MatrixXcd W =
            Lc_.transpose() *
            (Complex(0, lambda) * Eigen::MatrixXcd::Identity(n, n) - Bc_);
        // C = W L^{-T}; sigma_min(C) = 1 / ||R||_E and C^T = L^{-1} W^T
        Eigen::MatrixXcd Ct = Lc_.triangularView<Eigen::Lower>().solve(W.transpose().eval());
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(Ct);
        double smin = svd.singularValues().tail(1)(0);
        if (smin <= 0.0) return std::numeric_limits<double>::quiet_NaN();
        return 1.0 / smin;
    }

  private:
    Eigen::MatrixXcd Bc_;
    Eigen::MatrixXcd Lc_;
};

double fit_growth_exponent(const std::vector<double>& lambdas, const std::vector<double>& norms) {
    const double lo = lambdas.front(), hi = lambdas.back();
    const double mid = 0.5 * (lo + hi);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] < mid || lambdas[i] <= 0 || !std::isfinite(norms[i])) continue;
        double x = std::log(lambdas[i]), y = std::log(norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

double SpectrumReport::abscissa_in_band(double imag_max) const {
    double out = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues)
        if (std::abs(z.imag()) <= imag_max) out = std::max(out, z.real());
    return out;
}

Eigen::MatrixXd dense_generator(const DiscreteSystem& sys) {
    const int n = sys.n_pos;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd MK = sys.mass_solver->solve(Eigen::MatrixXd(sys.K));
    Eigen::MatrixXd MD = sys.mass_solver->solve(Eigen::MatrixXd(sys.D));
    A.bottomLeftCorner(n, n) = -MK;
    A.bottomRightCorner(n, n) = -MD;
    return A;
}

ReducedSystem reduce_constant_mode(const DiscreteSystem& sys) {
    const int n = sys.n_pos;
    Eigen::MatrixXd A = dense_generator(sys);
    ReducedSystem out;

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    G.topLeftCorner(n, n) = Eigen::MatrixXd(sys.K);
    G.bottomRightCorner(n, n) = Eigen::MatrixXd(sys.M);

    if (!sys.has_p_constant_mode) {
        out.basis = Eigen::MatrixXd::Identity(2 * n, 2 * n);
        out.generator = std::move(A);
        out.gram = std::move(G);
        return out;
    }

    // Householder complement of the charge-mean functional inside positions.
    const Eigen::VectorXd& w = sys.p_mean_weight;
    std::vector<int> pdofs;
    for (int i = 0; i < n; ++i)
        if (w[i] != 0.0) pdofs.push_back(i);
    const int np = static_cast<int>(pdofs.size());
    Eigen::VectorXd wp(np);
    for (int i = 0; i < np; ++i) wp[i] = w[pdofs[static_cast<std::size_t>(i)]];
    Eigen::VectorXd hv = wp;
    hv[0] += wp.norm();  // reflector mapping wp to a multiple of e_0
    hv.normalize();
    Eigen::MatrixXd Hp = Eigen::MatrixXd::Identity(np, np) - 2.0 * hv * hv.transpose();
    // columns 1..np-1 of Hp span the complement of wp
    Eigen::MatrixXd Zx = Eigen::MatrixXd::Zero(n, n - 1);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (w[i] != 0.0) continue;
        Zx(i, col++) = 1.0;
    }
    for (int j = 1; j < np; ++j, ++col)
        for (int i = 0; i < np; ++i) Zx(pdofs[static_cast<std::size_t>(i)], col) = Hp(i, j);

    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2 * n, 2 * (n - 1));
    Z.topLeftCorner(n, n - 1) = Zx;
    Z.bottomRightCorner(n, n - 1) = Zx;

    out.generator = Z.transpose() * A * Z;
    out.gram = Z.transpose() * G * Z;
    out.basis = std::move(Z);
    return out;
}

SpectrumReport spectrum(const DiscreteSystem& sys, long long witness_n_max) {
    check_budget(sys);
    ReducedSystem red = reduce_constant_mode(sys);
    Eigen::EigenSolver<Eigen::MatrixXd> es(red.generator, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw SingularSolve("dense eigensolve failed");

    SpectrumReport report;
    const auto& vals = es.eigenvalues();
    report.eigenvalues.assign(vals.data(), vals.data() + vals.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const Complex& a, const Complex& b) {
                  return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
              });

    report.abscissa = -std::numeric_limits<double>::infinity();
    for (const auto& z : report.eigenvalues) report.abscissa = std::max(report.abscissa, z.real());

    report.nearest_to_axis = report.eigenvalues;
    std::sort(report.nearest_to_axis.begin(), report.nearest_to_axis.end(),
              [](const Complex& a, const Complex& b) {
                  return std::abs(a.real()) < std::abs(b.real());
              });
    if (report.nearest_to_axis.size() > 8) report.nearest_to_axis.resize(8);

    try {
        auto witnesses =
            find_resonances(sys.config.materials, sys.config.geometry.l1.approx, witness_n_max);
        for (const auto& w : witnesses) {
            Complex target(0.0, w.lambda_star);
            double best = std::numeric_limits<double>::infinity();
            Complex best_eig = 0.0;
            for (const auto& z : report.eigenvalues) {
                double gap = std::abs(z - target);
                if (gap < best) {
                    best = gap;
                    best_eig = z;
                }
            }
            report.resonance_matches.push_back({w, best_eig, best});
        }
    } catch (const NotResonant&) {
        // irrational or mixed-parity quotient: nothing to match
    }
    return report;
}

ResolventSweep resolvent_sweep(const DiscreteSystem& sys, const std::vector<double>& lambda_grid,
                               int jobs) {
    check_budget(sys);
    if (lambda_grid.empty()) throw std::invalid_argument("resolvent_sweep: empty grid");

    ResolventSweep sweep;
    sweep.lambdas = lambda_grid;
    sweep.norms.assign(lambda_grid.size(), 0.0);

    const double step = lambda_grid.size() > 1
                            ? (lambda_grid.back() - lambda_grid.front()) /
                                  static_cast<double>(lambda_grid.size() - 1)
                            : 1.0;

    auto run_range = [&](auto&& eval, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double lambda = sweep.lambdas[i];
            double norm = eval(lambda);
            if (!std::isfinite(norm) || norm > 1e13) {
                // sitting on an eigenvalue ordinate: nudge by half a step
                lambda += 0.5 * step;
                norm = eval(lambda);
                sweep.lambdas[i] = lambda;
            }
            sweep.norms[i] = norm;
        }
    };

    auto parallel_run = [&](auto&& eval) {
        const std::size_t total = sweep.lambdas.size();
        const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
        if (nthreads == 1) {
            run_range(eval, 0, total);
            return;
        }
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            std::size_t b = t * chunk, e = std::min(total, b + chunk);
            if (b >= e) break;
            pool.emplace_back([&, b, e] { run_range(eval, b, e); });
        }
        for (auto& th : pool) th.join();
    };

    if (sys.has_p_constant_mode) {
        DenseResolvent dense(sys);
        parallel_run([&](double l) { return dense.norm_at(l); });
    } else {
        StructuredResolvent structured(sys);
        parallel_run([&](double l) { return structured.norm_at(l); });
    }

    sweep.sup_norm = 0.0;
    for (double v : sweep.norms)
        if (std::isfinite(v)) sweep.sup_norm = std::max(sweep.sup_norm, v);
    sweep.growth_exponent = fit_growth_exponent(sweep.lambdas, sweep.norms);
    return sweep;
}

std::string spectrum_csv(const SpectrumReport& report) {
    CsvWriter csv;
    csv.header({"re", "im"});
    for (const auto& z : report.eigenvalues) csv.row({z.real(), z.imag()});
    return csv.str();
}

std::string sweep_csv(const ResolventSweep& sweep) {
    CsvWriter csv;
    csv.header({"lambda", "norm"});
    for (std::size_t i = 0; i < sweep.lambdas.size(); ++i)
        csv.row({sweep.lambdas[i], sweep.norms[i]});
    return csv.str();
}

}  // namespace piezstab
