#pragma once

#include "piezstab/assembly.hpp"
#include "piezstab/resonance.hpp"

#include <string>

namespace piezstab {

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energies;
    /// ||A w0||_E + ||w0||_E, the smooth-data surrogate used to normalize
    /// polynomial decay rates.
    double domain_surrogate_norm = 0.0;
    /// max over steps of |E+ - E + dt v_mid^T D v_mid| / E(0)
    double max_identity_error = 0.0;
    /// max over steps of (E+ - E) / E(0); nonpositive up to solver roundoff
    double max_energy_increase = 0.0;
};

struct IntegrateResult {
    EnergyTrace trace;
    Eigen::VectorXd final_state;
};

/// Implicit-midpoint integration of d/dt w = A_d w. The velocity update
/// solves (M + dt^2/4 K + dt/2 D) u+ = (M - dt^2/4 K - dt/2 D) u - dt K x,
/// which makes E(w+) - E(w) = -dt v_mid^T D v_mid an identity of the scheme.
/// EPE initial data is projected onto the zero-mean charge subspace.
IntegrateResult integrate(const DiscreteSystem& sys, Eigen::VectorXd w0, double dt, double T);

/// dt = min element size / (2 max wave speed), speeds {sqrt(c1), sqrt(c2), 1/sigma-}.
double default_dt(const DiscreteSystem& sys);

enum class DecayModel { Exponential, Polynomial };

struct DecayFit {
    DecayModel model = DecayModel::Exponential;
    double omega = 0.0;      // E ~ amplitude * exp(-omega t)
    double exponent = 0.0;   // E ~ amplitude * t^-exponent
    double amplitude = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    double r_squared = 0.0;
};

/// Least-squares fit on the trailing window [0.1 T, T]; log E against t for
/// the exponential model and against log t for the polynomial one.
DecayFit fit_decay(const EnergyTrace& trace, DecayModel model);

/// Eigenmode initial data for the two-layer system at a resonance witness:
/// positions carry the mode shape, velocities start at zero. For gamma > 0
/// the charge profile is the branch-weighted pair b+ sin(k+ x) + s b- sin(k- x);
/// for gamma = 0 the mode lives in the decoupled charge branch alone.
Eigen::VectorXd resonant_initial_state(const DiscreteSystem& sys, const ResonanceWitness& w);

/// Smooth deterministic initial data: one displacement arch over the whole
/// span, charge and velocities at rest.
Eigen::VectorXd smooth_initial_state(const DiscreteSystem& sys);

std::string energy_trace_csv(const EnergyTrace& trace);
std::string decay_report_csv(const std::vector<DecayFit>& fits);

}  // namespace piezstab
