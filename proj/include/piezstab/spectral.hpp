#pragma once

#include "piezstab/assembly.hpp"
#include "piezstab/resonance.hpp"

#include <complex>
#include <string>
#include <vector>

namespace piezstab {

/// Hard ceiling on the state dimension accepted by the dense-analysis paths.
inline constexpr int kDenseStateBudget = 6000;

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    double abscissa = 0.0;  // max real part
    /// eigenvalues sorted by |Re|, closest to the imaginary axis first
    std::vector<std::complex<double>> nearest_to_axis;

    /// Max real part over |Im| <= imag_max. Grid-scale modes of a P1 mesh
    /// have near-zero group velocity and barely reach a local damping
    /// region, so the raw abscissa degrades with refinement; restricted to a
    /// fixed resolved band it converges to the continuum value.
    double abscissa_in_band(double imag_max) const;

    struct ResonanceMatch {
        ResonanceWitness witness;
        std::complex<double> eigenvalue;
        double gap;  // |eigenvalue - i lambda*|
    };
    std::vector<ResonanceMatch> resonance_matches;
};

/// Dense eigen-decomposition of the generator. For the three-layer variant
/// the structurally decoupled constant charge pair is deflated first, so the
/// report describes the zero-mean subspace the flow actually lives on.
SpectrumReport spectrum(const DiscreteSystem& sys, long long witness_n_max = 10);

struct ResolventSweep {
    std::vector<double> lambdas;  // after any collision nudges
    std::vector<double> norms;    // ||(i lambda - A)^{-1}|| in the energy norm
    double growth_exponent = 0.0; // log-log slope over the upper half of the grid
    double sup_norm = 0.0;
};

/// Energy-operator-norm resolvent sweep along the imaginary axis. Grid
/// points that collide with an eigenvalue ordinate are nudged by half a grid
/// step. `jobs` parallelizes over grid points.
ResolventSweep resolvent_sweep(const DiscreteSystem& sys, const std::vector<double>& lambda_grid,
                               int jobs = 1);

/// Dense generator [[0, I], [-M^{-1}K, -M^{-1}D]].
Eigen::MatrixXd dense_generator(const DiscreteSystem& sys);

/// Orthonormal basis of the invariant subspace with zero-mean charge
/// positions and velocities, and the reduced generator / energy Gram on it.
struct ReducedSystem {
    Eigen::MatrixXd basis;      // state_dim x reduced_dim
    Eigen::MatrixXd generator;  // reduced_dim x reduced_dim
    Eigen::MatrixXd gram;       // energy Gram, SPD on the reduced space
};
ReducedSystem reduce_constant_mode(const DiscreteSystem& sys);

std::string spectrum_csv(const SpectrumReport& report);
std::string sweep_csv(const ResolventSweep& sweep);

}  // namespace piezstab
