#include <doctest.h>

#include "piezstab/config_io.hpp"
#include "piezstab/params.hpp"

#include <cmath>
#include <random>

using namespace piezstab;

namespace {

ConfigData pe_config() {
    ConfigData d;
    d.variant = Variant::PE;
    d.rho = 9;
    d.alpha = 1;
    d.beta = 1;
    d.gamma = 0;
    d.mu = 1;
    d.c2 = 1;
    d.l1 = 1;
    d.L = 2;
    d.damp_a = Rational(5, 4);
    d.damp_b = Rational(7, 4);
    d.damp_d0 = 1;
    return d;
}

}  // namespace

TEST_CASE("material constraints") {
    MaterialParams ok(1, 2, 1, 1, 1);
    CHECK(ok.alpha1.exact == Rational(1));
    CHECK(ok.alpha1.approx == doctest::Approx(1.0));
    // alpha1 = 0 on the boundary is rejected
    CHECK_THROWS_AS(MaterialParams(1, 1, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(MaterialParams(0, 2, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("construction with alpha <= gamma^2 beta always fails") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> small(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        Rational gamma(small(rng), small(rng));
        Rational beta(small(rng), small(rng));
        Rational slack(small(rng), small(rng) + 12);
        Rational alpha = gamma * gamma * beta - slack;  // < gamma^2 beta
        if (alpha <= 0) alpha = gamma * gamma * beta;   // boundary case
        CHECK_THROWS_AS(MaterialParams(1, alpha, beta, gamma, 1), std::invalid_argument);
    }
}

TEST_CASE("float fields track the rationals") {
    MaterialParams m(Rational(10, 3), Rational(7, 2), Rational(1, 3), Rational(1, 2),
                     Rational(22, 7));
    for (const Dual* d : {&m.rho, &m.alpha, &m.beta, &m.gamma, &m.mu, &m.alpha1})
        CHECK(std::abs(d->approx - to_double(d->exact)) <= 1e-15 * std::abs(d->approx));
}

TEST_CASE("geometry ordering") {
    CHECK_NOTHROW(Geometry(Variant::EPE, 1, 2, 3));
    CHECK_THROWS(Geometry(Variant::EPE, 2, 1, 3));
    CHECK_THROWS(Geometry(Variant::EPE, 1, 3, 3));
    CHECK_NOTHROW(Geometry(Variant::PE, 1, 0, 2));
    CHECK_THROWS(Geometry(Variant::PE, 2, 0, 2));
}

TEST_CASE("validate reports instead of throwing") {
    ConfigData d = pe_config();
    CHECK(validate(d).admissible());
    // flagged, not rejected
    bool decoupled = false;
    for (const auto& f : validate(d).flags) decoupled |= (f == "decoupled");
    CHECK(decoupled);

    SUBCASE("alpha1 boundary") {
        d.rho = 1;
        d.alpha = 1;
        d.gamma = 1;  // alpha1 = 0
        auto report = validate(d);
        CHECK(!report.admissible());
        CHECK(report.violations.front().key == "alpha1");
    }
    SUBCASE("damping support outside the layer") {
        d.damp_a = Rational(1, 5);
        d.damp_b = Rational(2, 5);
        CHECK(!validate(d).admissible());
    }
    SUBCASE("support must have positive margins") {
        d.damp_a = 1;  // touches l1
        d.damp_b = Rational(3, 2);
        CHECK(!validate(d).admissible());
    }
    SUBCASE("sampled profile below the floor") {
        d.damp_shape = DampingShape::Sampled;
        d.damp_samples = {{Rational(11, 10), Rational(1, 2)}, {Rational(19, 10), Rational(1, 2)}};
        CHECK(!validate(d).admissible());  // 1/2 < d0 = 1 on the support
        d.damp_samples = {{Rational(11, 10), Rational(2)}, {Rational(19, 10), Rational(2)}};
        CHECK(validate(d).admissible());
    }
}

TEST_CASE("config round trip is byte-identical") {
    ConfigData d = pe_config();
    d.gamma = Rational(4, 5);
    d.alpha = 1;
    d.rho = 4;
    d.mu = 4;
    std::string s1 = serialize_config(d);
    std::string s2 = serialize_config(parse_config(s1));
    CHECK(s1 == s2);

    ConfigData e;
    e.variant = Variant::EPE;
    e.rho = 1;
    e.alpha = 2;
    e.beta = 1;
    e.gamma = 1;
    e.mu = 1;
    e.c1 = 1;
    e.c2 = 1;
    e.l1 = 1;
    e.l2 = 2;
    e.has_l2 = true;
    e.L = 3;
    e.damp_a = Rational(5, 4);
    e.damp_b = Rational(7, 4);
    e.damp_d0 = 1;
    e.damp_shape = DampingShape::Sampled;
    e.damp_samples = {{Rational(5, 4), 1}, {Rational(3, 2), 2}, {Rational(7, 4), 1}};
    std::string t1 = serialize_config(e);
    std::string t2 = serialize_config(parse_config(t1));
    CHECK(t1 == t2);
}

TEST_CASE("parser reports line numbers") {
    try {
        parse_config("variant = PE\nrho== 1\n");
        CHECK(false);
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("sampled profile interpolates linearly") {
    DampingProfile p;
    p.a = Dual(Rational(1, 4));
    p.b = Dual(Rational(3, 4));
    p.d0 = Dual(Rational(1));
    p.shape = DampingShape::Sampled;
    p.samples = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(2)}, {Rational(1), Rational(0)}};
    CHECK(p.value(0.25) == doctest::Approx(1.0));
    CHECK(p.value(0.5) == doctest::Approx(2.0));
    CHECK(p.value(2.0) == 0.0);
}
