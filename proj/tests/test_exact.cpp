#include <doctest.h>

#include "piezstab/exact.hpp"
#include "piezstab/surd.hpp"

using namespace piezstab;

TEST_CASE("rational parsing") {
    CHECK(*parse_rational("3/4") == Rational(3, 4));
    CHECK(*parse_rational("-3/4") == Rational(-3, 4));
    CHECK(*parse_rational("7") == Rational(7));
    CHECK(*parse_rational("1.25") == Rational(5, 4));
    CHECK(*parse_rational(" 2/6 ") == Rational(1, 3));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("abc"));
    CHECK(!parse_rational(""));
}

TEST_CASE("rational formatting is canonical") {
    CHECK(format_rational(Rational(6, 4)) == "3/2");
    CHECK(format_rational(Rational(8, 2)) == "4");
    CHECK(format_rational(Rational(-1, 3)) == "-1/3");
}

TEST_CASE("perfect squares") {
    CHECK(is_perfect_square(Integer(0)));
    CHECK(is_perfect_square(Integer(144)));
    CHECK(!is_perfect_square(Integer(145)));
    CHECK(is_perfect_square(Rational(9, 4)));
    CHECK(!is_perfect_square(Rational(9, 5)));
    CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
}

TEST_CASE("surd arithmetic and comparison") {
    Surd phi = (Surd(1) + Surd::sqrt_of(5)) / Surd(2);
    Surd phi_conj = (Surd(1) - Surd::sqrt_of(5)) / Surd(2);
    CHECK((phi * phi_conj).is_rational());
    CHECK((phi * phi_conj).as_rational() == Rational(-1));
    CHECK((phi + phi_conj).as_rational() == Rational(1));
    CHECK(phi > Surd(Rational(8, 5)));
    CHECK(phi < Surd(Rational(13, 8)));
    CHECK(phi.floor() == 1);
    CHECK((-phi).floor() == -2);
    CHECK(phi.to_double() == doctest::Approx(1.6180339887498949).epsilon(1e-15));
}

TEST_CASE("surd radicand normalization folds squares") {
    Surd a(0, 1, Rational(8));   // sqrt(8) = 2 sqrt(2)
    Surd b(0, 2, Rational(2));
    CHECK(a == b);
    Surd c(0, 1, Rational(9));   // perfect square collapses to a rational
    CHECK(c.is_rational());
    CHECK(c.as_rational() == Rational(3));
    Surd d(0, 1, Rational(9, 4));
    CHECK(d.as_rational() == Rational(3, 2));
}

TEST_CASE("surd cancellation-safe conversion") {
    // sqrt(2) - 1.41421356... via huge convergent: 665857/470832
    Surd r2 = Surd::sqrt_of(2);
    Surd diff = r2 - Surd(Rational(665857, 470832));
    // reference = (2 - p^2/q^2) / (sqrt(2) + p/q), formed without cancellation
    double pq = 665857.0 / 470832.0;
    double reference = (2.0 - pq * pq) / (std::sqrt(2.0) + pq);
    CHECK(diff.to_double() == doctest::Approx(reference).epsilon(1e-12));
    CHECK(diff.to_double() != 0.0);
}
