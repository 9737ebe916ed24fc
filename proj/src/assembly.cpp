#include "piezstab/assembly.hpp"

#include "piezstab/csvio.hpp"
#include "piezstab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace piezstab {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

struct ElemTarget {
    Triplets& trips;
    void add(int i, int j, double v) {
        if (i >= 0 && j >= 0) trips.emplace_back(i, j, v);
    }
};

void add_stiffness(ElemTarget t, int d0, int d1, double coef, double h) {
    const double k = coef / h;
    t.add(d0, d0, k);
    t.add(d1, d1, k);
    t.add(d0, d1, -k);
    t.add(d1, d0, -k);
}

void add_mass(ElemTarget t, int d0, int d1, double coef, double h) {
    const double m = coef * h / 6.0;
    t.add(d0, d0, 2 * m);
    t.add(d1, d1, 2 * m);
    t.add(d0, d1, m);
    t.add(d1, d0, m);
}

// integral of d(x) phi_i phi_j over [a, b] inside element [x0, x0+h],
// 3-point Gauss (exact once d is linear on the subinterval)
void add_weighted_mass(ElemTarget t, int d0, int d1, const DampingProfile& profile, double x0,
                       double h, double a, double b) {
    const double lo = std::max(a, x0), hi = std::min(b, x0 + h);
    if (hi <= lo) return;
    static const std::array<double, 3> gx = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
    static const std::array<double, 3> gw = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double m00 = 0, m01 = 0, m11 = 0;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int g = 0; g < 3; ++g) {
        const double x = mid + half * gx[g];
        const double w = half * gw[g] * profile.value(x);
        const double phi1 = (x - x0) / h, phi0 = 1.0 - phi1;
        m00 += w * phi0 * phi0;
        m01 += w * phi0 * phi1;
        m11 += w * phi1 * phi1;
    }
    t.add(d0, d0, m00);
    t.add(d0, d1, m01);
    t.add(d1, d0, m01);
    t.add(d1, d1, m11);
}

Eigen::SparseMatrix<double> from_triplets(int n, const Triplets& trips) {
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

struct LayerCoef {
    double stiff_w;   // displacement stiffness coefficient
    double mass_w;    // displacement density
    bool piezo;       // layer carries the charge field
    bool damped;      // layer carries the damping term
};

std::vector<LayerCoef> layer_coefficients(const SystemConfig& cfg) {
    const auto& m = cfg.materials;
    if (cfg.variant() == Variant::EPE)
        return {{cfg.c1.approx, 1.0, false, false},
                {m.alpha.approx, m.rho.approx, true, true},
                {cfg.c2.approx, 1.0, false, false}};
    return {{m.alpha.approx, m.rho.approx, true, false}, {cfg.c2.approx, 1.0, false, true}};
}

}  // namespace

DiscreteSystem assemble(const SystemConfig& config, const Mesh& mesh) {
    DiscreteSystem sys{config, mesh};
    const auto coefs = layer_coefficients(config);
    const auto& m = config.materials;
    const int n_nodes = mesh.node_count();
    const int last = n_nodes - 1;

    sys.piezo_layer = (config.variant() == Variant::EPE) ? 1 : 0;
    sys.has_p_constant_mode = (config.variant() == Variant::EPE);

    // displacement dofs: whole chain minus the two clamped ends
    sys.disp_node_dof.assign(static_cast<std::size_t>(n_nodes), -1);
    int dof = 0;
    for (int i = 0; i < n_nodes; ++i) {
        if (i == 0 || i == last) continue;
        sys.disp_node_dof[static_cast<std::size_t>(i)] = dof++;
    }
    sys.n_disp = dof;

    // charge dofs on the piezo layer; PE pins p(0) = 0
    const int pl = sys.piezo_layer;
    const int p_first = mesh.layer_begin[static_cast<std::size_t>(pl)];
    const int p_count = mesh.n_per_layer[static_cast<std::size_t>(pl)] + 1;
    sys.p_node_dof.assign(static_cast<std::size_t>(p_count), -1);
    for (int i = 0; i < p_count; ++i) {
        if (config.variant() == Variant::PE && p_first + i == 0) continue;
        sys.p_node_dof[static_cast<std::size_t>(i)] = dof++;
    }
    sys.n_p = dof - sys.n_disp;
    sys.n_pos = dof;

    Triplets tM, tK, tD, tSpos, tSvel;
    ElemTarget M{tM}, K{tK}, D{tD}, Spos{tSpos}, Svel{tSvel};

    const double gamma = m.gamma.approx, beta = m.beta.approx;
    // indicator profiles live exactly on (a, b); sampled ones may be positive
    // anywhere their table covers
    double da = config.damping.a.approx, db = config.damping.b.approx;
    if (config.damping.shape == DampingShape::Sampled && !config.damping.samples.empty()) {
        da = to_double(config.damping.samples.front().first);
        db = to_double(config.damping.samples.back().first);
    }

    for (int layer = 0; layer < mesh.layers(); ++layer) {
        const int nb = mesh.layer_begin[static_cast<std::size_t>(layer)];
        const int ne = mesh.n_per_layer[static_cast<std::size_t>(layer)];
        const double h = mesh.h[static_cast<std::size_t>(layer)];
        const LayerCoef& lc = coefs[static_cast<std::size_t>(layer)];
        for (int e = 0; e < ne; ++e) {
            const int na = nb + e, nbq = nb + e + 1;
            const double x0 = mesh.nodes[static_cast<std::size_t>(na)];
            const int w0 = sys.disp_node_dof[static_cast<std::size_t>(na)];
            const int w1 = sys.disp_node_dof[static_cast<std::size_t>(nbq)];

            add_stiffness(K, w0, w1, lc.stiff_w, h);
            add_mass(M, w0, w1, lc.mass_w, h);
            add_stiffness(Spos, w0, w1, 1.0, h);
            add_mass(Svel, w0, w1, 1.0, h);

            if (lc.piezo) {
                const int q0 = sys.p_node_dof[static_cast<std::size_t>(na - p_first)];
                const int q1 = sys.p_node_dof[static_cast<std::size_t>(nbq - p_first)];
                // beta |gamma v_x - p_x|^2 contributes the cross terms; the
                // v-v part gamma^2*beta is already inside alpha = alpha1 + gamma^2*beta
                add_stiffness(K, q0, q1, beta, h);
                const double cross = -gamma * beta;
                const double kc = cross / h;
                K.add(w0, q0, kc);
                K.add(w1, q1, kc);
                K.add(w0, q1, -kc);
                K.add(w1, q0, -kc);
                K.add(q0, w0, kc);
                K.add(q1, w1, kc);
                K.add(q1, w0, -kc);
                K.add(q0, w1, -kc);

                add_mass(M, q0, q1, m.mu.approx, h);
                add_stiffness(Spos, q0, q1, 1.0, h);
                add_mass(Svel, q0, q1, 1.0, h);
                // the standard norm carries an L2 term for v on this layer
                add_mass(Spos, w0, w1, 1.0, h);
            }
            if (lc.damped)
                add_weighted_mass(D, w0, w1, config.damping, x0, h, da, db);
        }
    }

    sys.M = from_triplets(sys.n_pos, tM);
    sys.K = from_triplets(sys.n_pos, tK);
    sys.D = from_triplets(sys.n_pos, tD);
    sys.S_pos = from_triplets(sys.n_pos, tSpos);
    sys.S_vel = from_triplets(sys.n_pos, tSvel);

    sys.p_mean_weight = Eigen::VectorXd::Zero(sys.n_pos);
    const double hp = mesh.h[static_cast<std::size_t>(pl)];
    for (int i = 0; i < p_count; ++i) {
        const int d = sys.p_node_dof[static_cast<std::size_t>(i)];
        if (d < 0) continue;
        const bool end = (i == 0 || i == p_count - 1);
        sys.p_mean_weight[d] = end ? hp / 2.0 : hp;
    }

    sys.mass_solver = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    sys.mass_solver->compute(sys.M);
    if (sys.mass_solver->info() != Eigen::Success)
        throw SingularSolve("mass matrix factorization failed");
    return sys;
}

std::vector<std::pair<int, double>> DiscreteSystem::field_dofs(Field f) const {
    std::vector<std::pair<int, double>> out;
    auto chain_range = [&](int layer) {
        const int nb = mesh.layer_begin[static_cast<std::size_t>(layer)];
        const int ne = mesh.n_per_layer[static_cast<std::size_t>(layer)];
        for (int i = nb; i <= nb + ne; ++i) {
            int d = disp_node_dof[static_cast<std::size_t>(i)];
            if (d >= 0) out.emplace_back(d, mesh.nodes[static_cast<std::size_t>(i)]);
        }
    };
    const bool epe = (config.variant() == Variant::EPE);
    switch (f) {
        case Field::U:
            if (!epe) throw WrongVariant("field u exists only in the three-layer system");
            chain_range(0);
            break;
        case Field::V:
            chain_range(epe ? 1 : 0);
            break;
        case Field::Y:
            chain_range(epe ? 2 : 1);
            break;
        case Field::P: {
            const int pf = mesh.layer_begin[static_cast<std::size_t>(piezo_layer)];
            for (std::size_t i = 0; i < p_node_dof.size(); ++i) {
                int d = p_node_dof[i];
                if (d >= 0)
                    out.emplace_back(d, mesh.nodes[static_cast<std::size_t>(pf) + i]);
            }
            break;
        }
    }
    return out;
}

Eigen::VectorXd DiscreteSystem::apply_generator(const Eigen::VectorXd& state) const {
    if (state.size() != state_dim()) throw DimensionMismatch("state size mismatch");
    const auto x = state.head(n_pos);
    const auto u = state.tail(n_pos);
    Eigen::VectorXd out(state_dim());
    out.head(n_pos) = u;
    out.tail(n_pos) = -mass_solver->solve(K * x + D * u);
    return out;
}

Eigen::VectorXd DiscreteSystem::project_p_mean(Eigen::VectorXd state) const {
    if (!has_p_constant_mode) return state;
    if (state.size() != state_dim()) throw DimensionMismatch("state size mismatch");
    double total = p_mean_weight.sum();
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(n_pos);
    for (int i = 0; i < n_pos; ++i)
        if (p_mean_weight[i] != 0.0) ones[i] = 1.0;
    for (int block = 0; block < 2; ++block) {
        auto seg = state.segment(block * n_pos, n_pos);
        double mean = p_mean_weight.dot(seg) / total;
        seg -= mean * ones;
    }
    return state;
}

DiscreteSystem DiscreteSystem::without_damping() const {
    DiscreteSystem out = *this;
    out.D = Eigen::SparseMatrix<double>(n_pos, n_pos);
    return out;
}

double energy(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
    return 0.5 * energy_inner(sys, state, state);
}

double energy_inner(const DiscreteSystem& sys, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
    if (a.size() != sys.state_dim() || b.size() != sys.state_dim())
        throw DimensionMismatch("state size mismatch");
    const int n = sys.n_pos;
    return a.head(n).dot(sys.K * b.head(n)) + a.tail(n).dot(sys.M * b.tail(n));
}

double standard_norm_sq(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
    if (state.size() != sys.state_dim()) throw DimensionMismatch("state size mismatch");
    const int n = sys.n_pos;
    return state.head(n).dot(sys.S_pos * state.head(n)) +
           state.tail(n).dot(sys.S_vel * state.tail(n));
}

std::pair<double, double> norm_equivalence_constants(const SystemConfig& config) {
    if (config.variant() != Variant::EPE)
        throw WrongVariant("norm_equivalence_constants is defined for the EPE variant");
    const auto& m = config.materials;
    const double c1 = config.c1.approx, c2 = config.c2.approx;
    const double rho = m.rho.approx, beta = m.beta.approx, mu = m.mu.approx,
                 gamma = m.gamma.approx, alpha1 = m.alpha1.approx;
    const double l1 = config.geometry.l1.approx, l2 = config.geometry.l2.approx;

    const double g2 = gamma * gamma;
    const double C2 = std::max({c1, 1.0, alpha1 + 2.0 * beta * std::max(g2, 1.0), mu, rho, c2});
    const double c3 = 2.0 * (l2 - l1) * std::max(l1, l2 - l1);
    const double C1 =
        1.0 / std::max({1.0, (1.0 + c3) / c1, (1.0 + 2.0 * g2 + c3) / alpha1, 1.0 / rho,
                        2.0 / beta, 1.0 / mu, 1.0 / c2});
    return {C1, C2};
}

std::string export_triplets(const Eigen::SparseMatrix<double>& matrix) {
    std::string out;
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it) {
            out += std::to_string(it.row()) + " " + std::to_string(it.col()) + " " +
                   format_double(it.value()) + "\n";
        }
    return out;
}

Eigen::SparseMatrix<double> assemble_unconstrained_stiffness(const SystemConfig& config,
                                                             const Mesh& mesh) {
    const auto coefs = layer_coefficients(config);
    const auto& m = config.materials;
    const int n_nodes = mesh.node_count();
    const int pl = (config.variant() == Variant::EPE) ? 1 : 0;
    const int p_first = mesh.layer_begin[static_cast<std::size_t>(pl)];
    const int p_count = mesh.n_per_layer[static_cast<std::size_t>(pl)] + 1;
    const int n = n_nodes + p_count;

    Triplets trips;
    ElemTarget K{trips};
    const double gamma = m.gamma.approx, beta = m.beta.approx;
    for (int layer = 0; layer < mesh.layers(); ++layer) {
        const int nb = mesh.layer_begin[static_cast<std::size_t>(layer)];
        const int ne = mesh.n_per_layer[static_cast<std::size_t>(layer)];
        const double h = mesh.h[static_cast<std::size_t>(layer)];
        const LayerCoef& lc = coefs[static_cast<std::size_t>(layer)];
        for (int e = 0; e < ne; ++e) {
            const int w0 = nb + e, w1 = nb + e + 1;
            add_stiffness(K, w0, w1, lc.stiff_w, h);
            if (lc.piezo) {
                const int q0 = n_nodes + (w0 - p_first), q1 = n_nodes + (w1 - p_first);
                add_stiffness(K, q0, q1, beta, h);
                const double kc = -gamma * beta / h;
                K.add(w0, q0, kc);
                K.add(w1, q1, kc);
                K.add(w0, q1, -kc);
                K.add(w1, q0, -kc);
                K.add(q0, w0, kc);
                K.add(q1, w1, kc);
                K.add(q1, w0, -kc);
                K.add(q0, w1, -kc);
            }
        }
    }
    return from_triplets(n, trips);
}

}  // namespace piezstab
