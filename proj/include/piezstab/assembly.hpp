#pragma once

#include "piezstab/mesh.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <memory>
#include <string>
#include <vector>

namespace piezstab {

enum class Field { U, V, P, Y };

/// Piecewise-linear Galerkin discretization of one transmission system.
///
/// The state is (positions, velocities). Positions stack the displacement
/// chain (u/v/y share interface dofs, Dirichlet ends eliminated) and the
/// charge dofs on the piezoelectric layer. K realizes the energy quadratic
/// form  c|w_x|^2 on the outer layers plus alpha1|v_x|^2 + beta|gamma v_x -
/// p_x|^2 on the piezo layer, so the interface flux balances are natural and
/// never enter as penalty terms. The first-order generator is
///   d/dt (x, u) = (u, -M^{-1}(K x + D u)).
struct DiscreteSystem {
    SystemConfig config;
    Mesh mesh;

    int n_disp = 0;  // displacement dofs after Dirichlet elimination
    int n_p = 0;     // charge dofs
    int n_pos = 0;   // n_disp + n_p

    std::vector<int> disp_node_dof;  // per chain node: dof index or -1
    std::vector<int> p_node_dof;     // per piezo-layer node: dof index or -1
    int piezo_layer = 0;

    Eigen::SparseMatrix<double> M, K, D;
    Eigen::SparseMatrix<double> S_pos, S_vel;  // unweighted standard-norm Grams

    // Mean functional of the charge field: w_i = integral of the i-th hat
    // function over the piezo layer, embedded in position dofs. The EPE
    // charge field carries a constant zero-energy mode; PE pins it at x = 0.
    Eigen::VectorXd p_mean_weight;
    bool has_p_constant_mode = false;

    std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> mass_solver;

    int state_dim() const { return 2 * n_pos; }

    /// (dof, node coordinate) pairs for one field; interface nodes appear in
    /// the maps of both adjacent fields.
    std::vector<std::pair<int, double>> field_dofs(Field f) const;

    /// A_d applied to a state vector.
    Eigen::VectorXd apply_generator(const Eigen::VectorXd& state) const;

    /// Removes the constant component of the charge positions and velocities
    /// (no-op unless the system carries the constant mode).
    Eigen::VectorXd project_p_mean(Eigen::VectorXd state) const;

    /// Copy with the damping matrix zeroed (diagnostic use).
    DiscreteSystem without_damping() const;
};

DiscreteSystem assemble(const SystemConfig& config, const Mesh& mesh);

/// Discrete energy 1/2 (vel^T M vel + pos^T K pos).
double energy(const DiscreteSystem& sys, const Eigen::VectorXd& state);

/// Energy inner product of two states.
double energy_inner(const DiscreteSystem& sys, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Unweighted standard norm squared of a state (the S_pos/S_vel forms).
double standard_norm_sq(const DiscreteSystem& sys, const Eigen::VectorXd& state);

/// Two-sided energy/standard norm equivalence constants (C1, C2):
///   C2 = max(c1, 1, alpha1 + 2 beta max(gamma^2, 1), mu, rho, c2)
///   C1 = 1 / max(1, (1+c3)/c1, (1+2 gamma^2+c3)/alpha1, 1/rho, 2/beta, 1/mu, 1/c2)
/// with c3 = 2 (l2-l1) max(l1, l2-l1). Defined for the three-layer variant.
std::pair<double, double> norm_equivalence_constants(const SystemConfig& config);

/// Plain-text triplet export: one "row col value" line per stored entry.
std::string export_triplets(const Eigen::SparseMatrix<double>& matrix);

/// Raw stiffness with Dirichlet rows kept (all chain nodes free), used to
/// check that matched-slope states are in the discrete kernel.
Eigen::SparseMatrix<double> assemble_unconstrained_stiffness(const SystemConfig& config,
                                                             const Mesh& mesh);

}  // namespace piezstab
