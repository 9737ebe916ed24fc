#include <doctest.h>

#include "piezstab/characteristic.hpp"
#include "test_helpers.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <random>

using namespace piezstab;
using piezstab::testing::random_materials;

namespace {

MaterialParams decoupled_21() { return MaterialParams(1, 1, 1, 0, 4); }  // sigma = 2, 1
MaterialParams golden() { return MaterialParams(1, 2, 1, 1, 1); }        // sigma+^2 = (3+sqrt5)/2

}  // namespace

TEST_CASE("sigma closed form on the hand-checked configs") {
    SpectralData s = sigma_pm(decoupled_21());
    CHECK(s.discriminant == Rational(9));
    CHECK(s.A == Rational(5));
    CHECK(s.sigma_plus_sq.as_rational() == Rational(4));
    CHECK(s.sigma_minus_sq.as_rational() == Rational(1));
    CHECK(s.sigma_plus == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.sigma_minus == doctest::Approx(1.0).epsilon(1e-15));

    SpectralData g = sigma_pm(golden());
    CHECK(g.discriminant == Rational(5));
    Surd expected_plus(Rational(3, 2), Rational(1, 2), 5);
    Surd expected_minus(Rational(3, 2), Rational(-1, 2), 5);
    CHECK(g.sigma_plus_sq == expected_plus);
    CHECK(g.sigma_minus_sq == expected_minus);
    // sigma+ sigma- = sqrt(mu rho / (beta alpha1)) = 1 exactly
    CHECK((g.sigma_plus_sq * g.sigma_minus_sq).as_rational() == Rational(1));
}

TEST_CASE("sigma product and sum identities hold exactly for random materials") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        MaterialParams m = random_materials(rng);
        SpectralData s = sigma_pm(m);
        Rational ba1 = m.beta.exact * m.alpha1.exact;
        Surd product = s.sigma_plus_sq * s.sigma_minus_sq;
        Surd sum = s.sigma_plus_sq + s.sigma_minus_sq;
        REQUIRE(product.is_rational());
        REQUIRE(sum.is_rational());
        CHECK(product.as_rational() == m.mu.exact * m.rho.exact / ba1);
        CHECK(sum.as_rational() == s.A / ba1);
        // sigma+ > sigma- > 0 because the discriminant is positive
        CHECK(s.discriminant > 0);
        CHECK((s.sigma_plus_sq - s.sigma_minus_sq).sign() > 0);
        CHECK(s.sigma_minus_sq.sign() > 0);
        CHECK(s.sigma_plus > s.sigma_minus);
        CHECK(s.sigma_minus > 0.0);
    }
}

TEST_CASE("branch slopes b+- on the golden config") {
    auto [bp, bm] = b_pm(golden());
    CHECK(bp == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(bm == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(bp * bm == doctest::Approx(-1.0).epsilon(1e-12));

    SpectralData g = sigma_pm(golden());
    CHECK(g.b_plus_exact == Surd(Rational(1, 2), Rational(1, 2), 5));
    CHECK(g.b_minus_exact == Surd(Rational(1, 2), Rational(-1, 2), 5));
}

TEST_CASE("b+- identities hold exactly for random coupled materials") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        MaterialParams m = random_materials(rng, /*force_coupled=*/true);
        SpectralData s = sigma_pm(m);
        REQUIRE(s.coupled);
        Surd prod = s.b_plus_exact * s.b_minus_exact;
        REQUIRE(prod.is_rational());
        CHECK(prod.as_rational() == -m.rho.exact / m.mu.exact);
        Surd diff = s.b_plus_exact - s.b_minus_exact;
        Surd expected = Surd::sqrt_of(s.discriminant) /
                        Surd(m.beta.exact * m.gamma.exact * m.mu.exact);
        CHECK(diff == expected);
    }
}

TEST_CASE("b_pm refuses the decoupled case") {
    CHECK_THROWS_AS(b_pm(decoupled_21()), DecoupledGamma);
}

TEST_CASE("characteristic roots") {
    auto roots = char_poly_roots(1.0, decoupled_21());
    CHECK(roots[0] == std::complex<double>(0, 2));
    CHECK(roots[1] == std::complex<double>(0, -2));
    CHECK(roots[2] == std::complex<double>(0, 1));
    CHECK(roots[3] == std::complex<double>(0, -1));

    CHECK_THROWS_AS(char_poly_roots(0.0, decoupled_21()), std::invalid_argument);

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> lam(1.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        MaterialParams m = random_materials(rng);
        double lambda = lam(rng);
        auto rts = char_poly_roots(lambda, m);
        double kp = rts[0].imag();
        double tol = 1e-10 * m.alpha1.approx * m.beta.approx * std::max(1.0, std::pow(kp, 4));
        for (const auto& r : rts) CHECK(std::abs(char_poly(r, lambda, m)) <= tol);
    }
}

TEST_CASE("generator matrix layout and spectrum") {
    MaterialParams m = golden();
    Eigen::Matrix4d N = generator_matrix(3.0, m);
    CHECK(N.row(0).isApprox(Eigen::RowVector4d(0, 1, 0, 0)));
    CHECK(N.row(2).isApprox(Eigen::RowVector4d(0, 0, 0, 1)));
    CHECK(N.trace() == 0.0);

    // dense eigensolve oracle vs closed-form roots
    Eigen::EigenSolver<Eigen::Matrix4d> es(N);
    auto roots = char_poly_roots(3.0, m);
    for (int i = 0; i < 4; ++i) {
        double best = 1e300;
        for (const auto& r : roots) best = std::min(best, std::abs(es.eigenvalues()[i] - r));
        CHECK(best <= 1e-10);
    }
}

TEST_CASE("transfer matrix matches the scaling-and-squaring oracle") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> svals(-2.0, 2.0), lam(0.5, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        MaterialParams m = random_materials(rng, /*force_coupled=*/true);
        double s = svals(rng), lambda = lam(rng);
        Eigen::Matrix4d E = transfer_matrix(s, lambda, m);
        Eigen::Matrix4d oracle = (s * generator_matrix(lambda, m)).exp();
        CHECK((E - oracle).norm() <= 1e-10 * std::max(1.0, oracle.norm()));
    }
}

TEST_CASE("transfer matrix group structure") {
    MaterialParams m = golden();
    CHECK(transfer_matrix(0.0, 2.0, m).isIdentity(1e-14));

    std::mt19937 rng(15);
    std::uniform_real_distribution<double> svals(-1.5, 1.5), lam(0.5, 5.0);
    for (int trial = 0; trial < 30; ++trial) {
        MaterialParams mm = random_materials(rng, true);
        double s = svals(rng), t = svals(rng), lambda = lam(rng);
        Eigen::Matrix4d Es = transfer_matrix(s, lambda, mm);
        Eigen::Matrix4d Et = transfer_matrix(t, lambda, mm);
        Eigen::Matrix4d Est = transfer_matrix(s + t, lambda, mm);
        CHECK((Es * Et - Est).norm() <= 1e-9 * std::max(1.0, Est.norm()));
        CHECK((Es * transfer_matrix(-s, lambda, mm) - Eigen::Matrix4d::Identity()).norm() <= 1e-10);
        CHECK(Es.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    }

    CHECK_THROWS_AS(transfer_matrix(1.0, 1.0, decoupled_21()), DecoupledGamma);
    CHECK_THROWS_AS(transfer_matrix(1.0, 0.0, golden()), std::invalid_argument);
}

TEST_CASE("transfer sweep csv layout") {
    std::string csv = transfer_sweep_csv({0.0, 0.5}, 2.0, golden());
    CHECK(csv.substr(0, 7) == "s,E11,E");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(std::count(csv.begin(), csv.end(), ',') == 3 * 16);
    // first data row is E(0) = identity (up to signed zeros)
    CHECK(csv.find("\n0,1,") != std::string::npos);
}
