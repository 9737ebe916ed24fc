#include "piezstab/integrate.hpp"

#include "piezstab/csvio.hpp"

#include <cmath>
#include <numbers>

namespace piezstab {

IntegrateResult integrate(const DiscreteSystem& sys, Eigen::VectorXd w0, double dt, double T) {
    if (dt <= 0 || T <= 0) throw std::invalid_argument("integrate requires dt > 0 and T > 0");
    if (w0.size() != sys.state_dim()) throw DimensionMismatch("initial state size mismatch");
    w0 = sys.project_p_mean(std::move(w0));

    const int n = sys.n_pos;
    const long long steps = std::max(1ll, llround(T / dt));

    Eigen::SparseMatrix<double> S = sys.M + (dt * dt / 4.0) * sys.K + (dt / 2.0) * sys.D;
    Eigen::SparseMatrix<double> R = sys.M - (dt * dt / 4.0) * sys.K - (dt / 2.0) * sys.D;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(S);
    if (solver.info() != Eigen::Success)
        throw SingularSolve("midpoint system factorization failed");

    IntegrateResult out;
    out.trace.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.trace.energies.reserve(static_cast<std::size_t>(steps) + 1);

    const double e0 = energy(sys, w0);
    const double scale = std::max(e0, 1e-300);
    out.trace.domain_surrogate_norm =
        std::sqrt(std::max(0.0, 2.0 * energy(sys, sys.apply_generator(w0)))) +
        std::sqrt(std::max(0.0, 2.0 * e0));
    out.trace.times.push_back(0.0);
    out.trace.energies.push_back(e0);

    Eigen::VectorXd x = w0.head(n), u = w0.tail(n);
    double e_prev = e0;
    for (long long k = 1; k <= steps; ++k) {
        Eigen::VectorXd rhs = R * u - dt * (sys.K * x);
        Eigen::VectorXd u_next = solver.solve(rhs);
        Eigen::VectorXd x_next = x + (dt / 2.0) * (u + u_next);
        Eigen::VectorXd u_mid = 0.5 * (u + u_next);

        Eigen::VectorXd w(sys.state_dim());
        w << x_next, u_next;
        const double e_next = energy(sys, w);
        const double dissipated = dt * u_mid.dot(sys.D * u_mid);
        out.trace.max_identity_error =
            std::max(out.trace.max_identity_error, std::abs(e_next - e_prev + dissipated) / scale);
        out.trace.max_energy_increase =
            std::max(out.trace.max_energy_increase, (e_next - e_prev) / scale);

        out.trace.times.push_back(dt * static_cast<double>(k));
        out.trace.energies.push_back(e_next);
        x.swap(x_next);
        u.swap(u_next);
        e_prev = e_next;
    }
    out.final_state.resize(sys.state_dim());
    out.final_state << x, u;
    return out;
}

double default_dt(const DiscreteSystem& sys) {
    SpectralData sd = sigma_pm(sys.config.materials);
    double speed = std::max(std::sqrt(sys.config.c2.approx), 1.0 / sd.sigma_minus);
    if (sys.config.variant() == Variant::EPE)
        speed = std::max(speed, std::sqrt(sys.config.c1.approx));
    return sys.mesh.min_h() / (2.0 * speed);
}

DecayFit fit_decay(const EnergyTrace& trace, DecayModel model) {
    const std::size_t n = trace.times.size();
    if (n < 50) throw std::invalid_argument("fit_decay needs a trace of at least 50 samples");
    const double t_end = trace.times.back();
    const double t_lo = 0.1 * t_end;

    double e0 = trace.energies.front();
    double e_min = e0;
    for (double e : trace.energies) e_min = std::min(e_min, e);
    if (e_min >= e0 * (1.0 - 1e-12))
        throw DegenerateTrace("energy never decreased; nothing to fit");

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
        if (trace.times[i] < t_lo) continue;
        const double e = trace.energies[i];
        if (e < 1e-300) throw DegenerateTrace("energy underflowed inside the fit window");
        xs.push_back(model == DecayModel::Exponential ? trace.times[i]
                                                      : std::log(trace.times[i]));
        ys.push_back(std::log(e));
    }
    if (xs.size() < 10) throw DegenerateTrace("fit window too short");

    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = slope * xs[i] + intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }

    DecayFit fit;
    fit.model = model;
    fit.window_lo = t_lo;
    fit.window_hi = t_end;
    fit.amplitude = std::exp(intercept);
    fit.r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 0.0;
    if (model == DecayModel::Exponential)
        fit.omega = -slope;
    else
        fit.exponent = -slope;
    return fit;
}

Eigen::VectorXd resonant_initial_state(const DiscreteSystem& sys, const ResonanceWitness& w) {
    if (sys.config.variant() != Variant::PE)
        throw WrongVariant("resonant modes are defined for the two-layer system");
    const auto& m = sys.config.materials;
    const double l1 = sys.config.geometry.l1.approx;
    const double pi = std::numbers::pi;
    const double kp = (2.0 * w.n_plus + 1.0) * pi / (2.0 * l1);
    const double km = (2.0 * w.n_minus + 1.0) * pi / (2.0 * l1);

    Eigen::VectorXd state = Eigen::VectorXd::Zero(sys.state_dim());
    auto v_dofs = sys.field_dofs(Field::V);
    auto p_dofs = sys.field_dofs(Field::P);

    if (m.coupled()) {
        SpectralData sd = sigma_pm(m);
        for (auto [d, x] : v_dofs)
            state[d] = std::sin(kp * x) + w.sign * std::sin(km * x);
        for (auto [d, x] : p_dofs)
            state[d] = sd.b_plus * std::sin(kp * x) + w.sign * sd.b_minus * std::sin(km * x);
        return state;
    }

    // gamma = 0: the two branches are the bare displacement and charge waves,
    // and only the charge branch can close all interface conditions. Its
    // square inverse speed is mu/beta.
    SpectralData sd = sigma_pm(m);
    Rational mu_over_beta = m.mu.exact / m.beta.exact;
    bool plus_is_charge = sd.sigma_plus_sq.is_rational() &&
                          sd.sigma_plus_sq.as_rational() == mu_over_beta;
    const double kq = plus_is_charge ? kp : km;
    for (auto [d, x] : p_dofs) state[d] = std::sin(kq * x);
    return state;
}

Eigen::VectorXd smooth_initial_state(const DiscreteSystem& sys) {
    const double pi = std::numbers::pi;
    const double span = sys.mesh.layer_hi.back();

    // one displacement arch over the whole span, charge and velocities at rest
    Eigen::VectorXd state = Eigen::VectorXd::Zero(sys.state_dim());
    for (int i = 0; i < sys.mesh.node_count(); ++i) {
        int d = sys.disp_node_dof[static_cast<std::size_t>(i)];
        if (d >= 0) state[d] = std::sin(pi * sys.mesh.nodes[static_cast<std::size_t>(i)] / span);
    }
    return state;
}

std::string energy_trace_csv(const EnergyTrace& trace) {
    CsvWriter csv;
    csv.header({"t", "E", "E_over_E0"});
    const double e0 = std::max(trace.energies.empty() ? 0.0 : trace.energies.front(), 1e-300);
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        csv.row({trace.times[i], trace.energies[i], trace.energies[i] / e0});
    return csv.str();
}

std::string decay_report_csv(const std::vector<DecayFit>& fits) {
    CsvWriter csv;
    csv.header({"model", "omega", "exponent", "amplitude", "window_lo", "window_hi", "r_squared"});
    for (const auto& f : fits) {
        csv.raw_row({f.model == DecayModel::Exponential ? "exponential" : "polynomial",
                     format_double(f.omega), format_double(f.exponent), format_double(f.amplitude),
                     format_double(f.window_lo), format_double(f.window_hi),
                     format_double(f.r_squared)});
    }
    return csv.str();
}

}  // namespace piezstab
