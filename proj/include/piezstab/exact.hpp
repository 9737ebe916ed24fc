#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace piezstab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const Integer& n) { return n.template convert_to<double>(); }

/// Floor of sqrt(n) for n >= 0.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    Integer s = isqrt(n);
    return s * s == n;
}

/// A reduced rational p/q is a square iff p and q are both squares.
inline bool is_perfect_square(const Rational& r) {
    return r >= 0 && is_perfect_square(num(r)) && is_perfect_square(den(r));
}

/// Exact sqrt of a perfect-square rational.
inline Rational rational_sqrt(const Rational& r) {
    if (!is_perfect_square(r)) throw std::domain_error("rational_sqrt of a non-square");
    return Rational(isqrt(num(r)), isqrt(den(r)));
}

inline Integer ipow(Integer base, unsigned exp) {
    Integer out = 1;
    while (exp) {
        if (exp & 1u) out *= base;
        base *= base;
        exp >>= 1u;
    }
    return out;
}

/// Parses "p/q", integers, and plain decimals ("1.25" -> 5/4). No exponents.
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical form: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

}  // namespace piezstab
