#include <doctest.h>

#include "piezstab/resonance.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace piezstab;
using piezstab::testing::random_materials;

namespace {

// independent oracle: exhaustive scan over odd pairs with exact comparison
std::set<std::pair<long long, long long>> brute_force_pairs(const MaterialParams& m,
                                                            long long n_max) {
    SigmaQuotient q = sigma_quotient(m);
    std::set<std::pair<long long, long long>> out;
    if (q.form != SigmaQuotient::Form::Rational) return out;
    for (long long np = 0; np <= n_max; ++np)
        for (long long nm = 0; nm <= n_max; ++nm)
            if (Integer(2 * np + 1) * den(q.ratio) == Integer(2 * nm + 1) * num(q.ratio))
                out.insert({np, nm});
    return out;
}

}  // namespace

TEST_CASE("resonances for sigma ratio 3") {
    MaterialParams m(9, 1, 1, 0, 1);
    auto witnesses = find_resonances(m, 1.0, 5);
    REQUIRE(witnesses.size() == 2);
    CHECK(witnesses[0].n_plus == 1);
    CHECK(witnesses[0].n_minus == 0);
    CHECK(witnesses[1].n_plus == 4);
    CHECK(witnesses[1].n_minus == 1);
    // lambda* = 3 pi / (2 l1 sigma+) with sigma+ = 3
    CHECK(witnesses[0].lambda_star == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    // kappa ratio equals the quotient exactly in integers
    CHECK((2 * witnesses[0].n_plus + 1) * 1 == 3 * (2 * witnesses[0].n_minus + 1));
}

TEST_CASE("non-resonant quotients refuse") {
    CHECK_THROWS_AS(find_resonances(MaterialParams(1, 1, 1, 0, 4), 1.0, 10), NotResonant);
    // golden-ratio config: irrational quotient
    CHECK_THROWS_AS(find_resonances(MaterialParams(1, 2, 1, 1, 1), 1.0, 10), NotResonant);
}

TEST_CASE("find_resonances equals the brute-force oracle") {
    std::mt19937 rng(21);
    int resonant_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        MaterialParams m = random_materials(rng);
        std::set<std::pair<long long, long long>> expected = brute_force_pairs(m, 8);
        std::set<std::pair<long long, long long>> got;
        try {
            for (const auto& w : find_resonances(m, 1.0, 8)) got.insert({w.n_plus, w.n_minus});
        } catch (const NotResonant&) {
            // oracle must agree that no pair exists
        }
        CHECK(got == expected);
        if (!expected.empty()) ++resonant_seen;
    }
    CHECK(resonant_seen > 0);  // the sample actually exercised the resonant branch
}

TEST_CASE("coupled material with odd/odd ratio") {
    // gamma = 4/5: sigma+/sigma- = 3 with genuine coupling
    MaterialParams m(4, 1, 1, Rational(4, 5), 4);
    auto witnesses = find_resonances(m, 1.0, 5);
    REQUIRE(!witnesses.empty());
    CHECK(witnesses[0].n_plus == 1);
    CHECK(witnesses[0].n_minus == 0);
}

TEST_CASE("resonant mode shape") {
    MaterialParams m(9, 1, 1, 0, 1);
    auto w = find_resonances(m, 1.0, 5).front();
    CHECK(w.sign == 1);  // opposite parities cancel with the plus branch

    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(i / 200.0);
    auto v = resonant_mode(w, 1.0, grid);

    CHECK(v.front() == doctest::Approx(0.0));          // v(0) = 0
    CHECK(v.back() == doctest::Approx(0.0).epsilon(1e-12));  // v(l1) = 0 by the sign choice

    // v_x(l1) = 0: both cosines vanish at odd multiples of pi/2
    const double pi = std::numbers::pi;
    auto vx = [&](double x) {
        return w.kappa_plus * std::cos(w.kappa_plus * x) +
               w.sign * w.kappa_minus * std::cos(w.kappa_minus * x);
    };
    CHECK(std::abs(vx(1.0)) <= 1e-12);
    (void)pi;
}

TEST_CASE("resonant mode satisfies the quartic at lambda*") {
    // (rho, alpha, beta, gamma, mu) = (9, 1, 1, 0, 1): quartic handled directly
    MaterialParams m(9, 1, 1, 0, 1);
    auto w = find_resonances(m, 1.0, 5).front();
    const double lam = w.lambda_star;
    const double a1b = m.alpha1.approx * m.beta.approx;
    const double A = m.rho.approx * m.beta.approx + m.mu.approx * m.alpha.approx;
    const double mr = m.mu.approx * m.rho.approx;

    // spectral evaluation of alpha1 beta v'''' + lambda^2 A v'' + mu rho lambda^4 v
    auto residual = [&](double x) {
        const double kp = w.kappa_plus, km = w.kappa_minus;
        double v = std::sin(kp * x) + w.sign * std::sin(km * x);
        double vxx = -kp * kp * std::sin(kp * x) - w.sign * km * km * std::sin(km * x);
        double vxxxx = std::pow(kp, 4) * std::sin(kp * x) +
                       w.sign * std::pow(km, 4) * std::sin(km * x);
        (void)v;
        return a1b * vxxxx + lam * lam * A * vxx + mr * std::pow(lam, 4) *
               (std::sin(kp * x) + w.sign * std::sin(km * x));
    };
    const double scale = mr * std::pow(lam, 4) * 2.0;
    for (int i = 0; i <= 100; ++i) {
        double x = i / 100.0;
        CHECK(std::abs(residual(x)) <= 1e-8 * scale);
    }
}
