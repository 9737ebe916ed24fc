#pragma once

#include "piezstab/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace piezstab {

/// Exact element a + b*sqrt(d) of a real quadratic field.
///
/// The radicand is normalized to a square-reduced nonnegative integer, so all
/// values derived from one discriminant stay directly comparable. Arithmetic
/// between two irrational surds requires matching radicands; mixing distinct
/// fields throws.
class Surd {
  public:
    Surd() : a_(0), b_(0), d_(0) {}
    Surd(Rational rational) : a_(std::move(rational)), b_(0), d_(0) {}  // NOLINT: implicit
    Surd(long long n) : a_(n), b_(0), d_(0) {}                          // NOLINT: implicit

    Surd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)) {
        if (d < 0) throw std::domain_error("Surd: negative radicand");
        normalize(std::move(d));
    }

    static Surd sqrt_of(const Rational& d) { return Surd(0, 1, d); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_coeff() const { return b_; }
    const Integer& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }

    /// Exact rational value; throws when irrational.
    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("Surd: irrational value");
        return a_;
    }

    int sign() const {
        int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
        int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 against b^2 d
        Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sa : sb;
    }

    /// Cancellation-safe conversion: when a and b*sqrt(d) nearly cancel, the
    /// value is evaluated as (a^2 - b^2 d) / (a - b sqrt(d)).
    double to_double() const {
        if (b_ == 0) return piezstab::to_double(a_);
        double root = std::sqrt(piezstab::to_double(Rational(d_)));
        double da = piezstab::to_double(a_), db = piezstab::to_double(b_);
        if (a_ == 0 || (a_ > 0) == (b_ > 0)) return da + db * root;
        Rational numr = a_ * a_ - b_ * b_ * Rational(d_);
        double denom = da - db * root;
        return piezstab::to_double(numr) / denom;
    }

    Surd operator-() const { return Surd(-a_, -b_, d_, nullptr); }

    friend Surd operator+(const Surd& x, const Surd& y) {
        Integer d = merged_radicand(x, y);
        return Surd(x.a_ + y.a_, x.b_ + y.b_, d, nullptr);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

    friend Surd operator*(const Surd& x, const Surd& y) {
        Integer d = merged_radicand(x, y);
        return Surd(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d,
                    nullptr);
    }

    friend Surd operator/(const Surd& x, const Surd& y) {
        Integer d = merged_radicand(x, y);
        Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(d);
        if (norm == 0) throw std::domain_error("Surd: division by zero");
        Surd conj(y.a_, -y.b_, d, nullptr);
        Surd prod = x * conj;
        return Surd(prod.a_ / norm, prod.b_ / norm, d, nullptr);
    }

    friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
    friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

    Surd abs() const { return sign() < 0 ? -*this : *this; }

    /// Exact integer floor.
    Integer floor() const {
        if (b_ == 0) {
            Integer q = num(a_) / den(a_);
            if (a_ < 0 && q * den(a_) != num(a_)) --q;
            return q;
        }
        Integer guess(static_cast<long long>(std::floor(to_double())));
        while ((*this - Surd(Rational(guess))).sign() < 0) --guess;
        while ((*this - Surd(Rational(guess + 1))).sign() >= 0) ++guess;
        return guess;
    }

    std::string str() const {
        if (b_ == 0) return format_rational(a_);
        std::string out = "(" + format_rational(a_);
        out += (b_ > 0) ? " + " : " - ";
        Rational babs = b_ > 0 ? b_ : Rational(-b_);
        if (babs != 1) out += format_rational(babs) + "*";
        out += "sqrt(" + d_.str() + "))";
        return out;
    }

  private:
    // Trusted constructor: radicand already square-reduced.
    Surd(Rational a, Rational b, Integer d, std::nullptr_t)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (b_ == 0) d_ = 0;
    }

    static Integer merged_radicand(const Surd& x, const Surd& y) {
        if (x.b_ == 0) return y.d_;
        if (y.b_ == 0) return x.d_;
        if (x.d_ != y.d_) throw std::domain_error("Surd: mixed quadratic fields");
        return x.d_;
    }

    void normalize(Rational d) {
        if (b_ == 0 || d == 0) {
            b_ = 0;
            d_ = 0;
            return;
        }
        // a + b*sqrt(p/q) = a + (b/q)*sqrt(p*q)
        b_ /= Rational(den(d));
        Integer rad = num(d) * den(d);
        // peel off square factors so equal values share a representation
        Integer s = isqrt(rad);
        if (s * s == rad) {
            a_ += b_ * Rational(s);
            b_ = 0;
            d_ = 0;
            return;
        }
        for (Integer f = 2; f * f <= rad && f < 100000; ++f) {
            Integer f2 = f * f;
            while (rad % f2 == 0) {
                rad /= f2;
                b_ *= Rational(f);
            }
        }
        d_ = rad;
    }

    Rational a_, b_;
    Integer d_;
};

}  // namespace piezstab
