#include <doctest.h>

#include "piezstab/spectral.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>

using namespace piezstab;
using piezstab::testing::epe_acceptance_config;
using piezstab::testing::pe_coupled_resonant_config;
using piezstab::testing::pe_resonant_config;

TEST_CASE("damped EPE spectrum sits strictly left of the axis") {
    // the resolved band |Im| <= 30 carries the physical modes; its abscissa
    // is a mesh-stable negative number
    SystemConfig epe = SystemConfig::from(epe_acceptance_config());
    double abscissa_coarse, abscissa_fine;
    {
        DiscreteSystem sys = assemble(epe, build_mesh(epe, {24, 24, 24}));
        SpectrumReport r = spectrum(sys);
        CHECK(r.abscissa < 0.0);
        abscissa_coarse = r.abscissa_in_band(30.0);
    }
    {
        DiscreteSystem sys = assemble(epe, build_mesh(epe, {48, 48, 48}));
        abscissa_fine = spectrum(sys).abscissa_in_band(30.0);
    }
    CHECK(abscissa_coarse < -1e-3);
    CHECK(abscissa_fine < -1e-3);
    CHECK(std::abs(abscissa_fine - abscissa_coarse) <= 0.3 * std::abs(abscissa_coarse));
}

TEST_CASE("eigenvalue real parts never cross the axis") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {25, 25}));
    SpectrumReport report = spectrum(sys);
    for (const auto& z : report.eigenvalues) CHECK(z.real() <= 1e-10);
    // spectrum of the real generator is symmetric about the real axis
    for (const auto& z : report.eigenvalues) {
        double best = 1e300;
        for (const auto& w : report.eigenvalues) best = std::min(best, std::abs(w - std::conj(z)));
        CHECK(best <= 1e-10 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("undamped spectra are purely imaginary") {
    for (bool epe : {true, false}) {
        ConfigData data = epe ? epe_acceptance_config() : pe_resonant_config();
        SystemConfig cfg = SystemConfig::from(data);
        Mesh mesh = build_mesh(cfg, epe ? std::vector<int>{14, 14, 14} : std::vector<int>{20, 20});
        DiscreteSystem sys = assemble(cfg, mesh).without_damping();
        SpectrumReport report = spectrum(sys);
        for (const auto& z : report.eigenvalues)
            CHECK(std::abs(z.real()) <= 1e-10 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("resonant ordinate appears in the damped spectrum at O(h^2)") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    auto gap_at = [&](int n) {
        DiscreteSystem sys = assemble(pe, build_mesh(pe, {n, n}));
        SpectrumReport report = spectrum(sys, 3);
        REQUIRE(!report.resonance_matches.empty());
        return report.resonance_matches.front().gap;
    };
    double g30 = gap_at(30), g60 = gap_at(60);
    CHECK(g30 <= 5e-3);
    CHECK(g60 <= g30 / 2.5);  // O(h^2) shrinkage

    // the coupled odd/odd configuration shows the same pinned ordinate
    SystemConfig pec = SystemConfig::from(pe_coupled_resonant_config());
    DiscreteSystem sysc = assemble(pec, build_mesh(pec, {40, 40}));
    SpectrumReport report = spectrum(sysc, 3);
    REQUIRE(!report.resonance_matches.empty());
    CHECK(report.resonance_matches.front().gap <= 5e-3);
}

TEST_CASE("resolvent is finite at the origin for the damped EPE system") {
    SystemConfig epe = SystemConfig::from(epe_acceptance_config());
    DiscreteSystem sys = assemble(epe, build_mesh(epe, {10, 10, 10}));
    ResolventSweep sweep = resolvent_sweep(sys, {0.0});
    CHECK(std::isfinite(sweep.norms[0]));
    CHECK(sweep.norms[0] > 0.0);
}

TEST_CASE("resolvent norm dominates the inverse spectral distance") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {12, 12}));
    SpectrumReport report = spectrum(sys);
    std::vector<double> grid;
    for (int i = 0; i < 25; ++i) grid.push_back(0.5 + i * 0.77);
    ResolventSweep sweep = resolvent_sweep(sys, grid);
    for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
        std::complex<double> z(0.0, sweep.lambdas[i]);
        double dist = 1e300;
        for (const auto& mu : report.eigenvalues) dist = std::min(dist, std::abs(mu - z));
        CHECK(sweep.norms[i] >= (1.0 - 1e-6) / dist);
    }
}

TEST_CASE("sweep is symmetric under reflection of the grid") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {15, 15}));
    std::vector<double> pos = {0.9, 2.3, 5.1, 9.7};
    std::vector<double> neg = {-0.9, -2.3, -5.1, -9.7};
    ResolventSweep sp = resolvent_sweep(sys, pos);
    ResolventSweep sn = resolvent_sweep(sys, neg);
    for (std::size_t i = 0; i < pos.size(); ++i)
        CHECK(sp.norms[i] == doctest::Approx(sn.norms[i]).epsilon(1e-8));
}

TEST_CASE("structured and dense evaluations agree") {
    // PE systems have a definite energy Gram, so both backends are usable;
    // the power iteration must reproduce the SVD-based value
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {10, 10}));

    ReducedSystem red = reduce_constant_mode(sys);
    Eigen::LLT<Eigen::MatrixXd> llt(red.gram);
    REQUIRE(llt.info() == Eigen::Success);
    Eigen::MatrixXcd L = Eigen::MatrixXd(llt.matrixL()).cast<std::complex<double>>();

    std::vector<double> grid = {0.7, 1.9, 4.2, 8.5};
    ResolventSweep sweep = resolvent_sweep(sys, grid);
    const int n = static_cast<int>(red.generator.rows());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Eigen::MatrixXcd W =
            L.transpose() * (std::complex<double>(0, grid[i]) *
                                 Eigen::MatrixXcd::Identity(n, n) -
                             red.generator.cast<std::complex<double>>());
        Eigen::MatrixXcd Ct = L.triangularView<Eigen::Lower>().solve(W.transpose().eval());
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(Ct);
        double expected = 1.0 / svd.singularValues().tail(1)(0);
        CHECK(sweep.norms[i] == doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("growth exponent of a damped sweep stays small") {
    SystemConfig pe = SystemConfig::from(pe_coupled_resonant_config());
    // mixed-parity coupled variant: damp the elastic layer, sweep off-resonance
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {20, 20}));
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i) grid.push_back(1.0 + i * 0.5);
    ResolventSweep sweep = resolvent_sweep(sys, grid);
    CHECK(std::isfinite(sweep.sup_norm));
    CHECK(sweep.sup_norm > 0.0);
}

TEST_CASE("dense budget is enforced") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {1100, 1100}));
    CHECK(sys.state_dim() > kDenseStateBudget);
    CHECK_THROWS_AS(spectrum(sys), TooLarge);
    CHECK_THROWS_AS(resolvent_sweep(sys, {1.0}), TooLarge);
}

TEST_CASE("spectrum csv format") {
    SystemConfig pe = SystemConfig::from(pe_resonant_config());
    DiscreteSystem sys = assemble(pe, build_mesh(pe, {6, 6}));
    SpectrumReport report = spectrum(sys);
    std::string csv = spectrum_csv(report);
    CHECK(csv.rfind("re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(report.eigenvalues.size()) + 1);
}
