#pragma once

#include "piezstab/surd.hpp"
#include "piezstab/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace piezstab {

/// Partial quotients [a0; a1, a2, ...] with exact convergents p_n/q_n built
/// from the recurrence p_n = a_n p_{n-1} + p_{n-2}, q_n likewise.
struct ContinuedFraction {
    std::vector<Integer> partial_quotients;               // a0 .. a_depth
    std::vector<std::pair<Integer, Integer>> convergents; // (p_n, q_n), same length
    bool exact = false;           // quotients certified by the exact periodic algorithm
    bool terminated = false;      // expansion ended (rational input)
    std::vector<Integer> period;  // repeating block when exact (empty for rationals)
    std::size_t period_start = 0; // index of the first periodic quotient
};

/// Exact expansion of a quadratic surd (or rational) to `depth` quotients
/// past a0. Periodicity is detected and reused, so any depth is cheap.
ContinuedFraction continued_fraction(const Surd& x, int depth);

/// Interval-certified expansion of a value known only as lo <= x <= hi.
/// Each quotient is emitted only when floor agrees on the whole interval;
/// otherwise PrecisionExhausted is thrown.
ContinuedFraction continued_fraction(const Rational& lo, const Rational& hi, int depth);

/// Expansion of a decimal constant given by its significant digits
/// ("3.14159..."), truncated to `digits` significant digits with a one-ulp
/// uncertainty interval. `digits <= 0` uses the cf_digit_budget() default.
ContinuedFraction continued_fraction_decimal(const std::string& decimal, int depth,
                                             int digits = 0);

/// Digit budget for float-mode expansions: PIEZO_STAB_PRECISION or 50.
int cf_digit_budget();

/// Built-in high-precision decimal constants ("pi", "e", "ln2").
std::optional<std::string> builtin_constant_digits(const std::string& name);

enum class BoundedQuotients { Yes, No, Undetermined };

struct BadlyApproximableReport {
    BoundedQuotients verdict = BoundedQuotients::Undetermined;
    Integer max_quotient;  // largest partial quotient seen past a0
};

/// Bounded partial quotients <=> badly approximable. A certified Yes needs
/// the exact periodic expansion; a finite float prefix can never refute
/// boundedness, so it reports Undetermined with the largest quotient seen.
BadlyApproximableReport badly_approximable(const ContinuedFraction& cf);

}  // namespace piezstab
