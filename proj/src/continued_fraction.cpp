#include "piezstab/continued_fraction.hpp"

#include <cstdlib>
#include <map>

namespace piezstab {

namespace {

void push_convergent(ContinuedFraction& cf, const Integer& a) {
    cf.partial_quotients.push_back(a);
    std::size_t n = cf.convergents.size();
    // virtual seeds p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1
    Integer p1 = n >= 1 ? cf.convergents[n - 1].first : Integer(1);
    Integer q1 = n >= 1 ? cf.convergents[n - 1].second : Integer(0);
    Integer p2 = n >= 2 ? cf.convergents[n - 2].first : (n == 1 ? Integer(1) : Integer(0));
    Integer q2 = n >= 2 ? cf.convergents[n - 2].second : (n == 1 ? Integer(0) : Integer(1));
    cf.convergents.emplace_back(a * p1 + p2, a * q1 + q2);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// floor((P + sqrt(D)) / Q) for nonsquare D > 0, via an exact sign check
// around the double-precision estimate.
Integer surd_floor(const Integer& P, const Integer& D, const Integer& Q, const Integer& sqrtD) {
    Integer a = floor_div(P + sqrtD, Q);
    auto at_least = [&](const Integer& cand) {
        // (P + sqrt(D))/Q >= cand, i.e. sqrt(D) >= cand*Q - P for Q > 0 and
        // sqrt(D) <= cand*Q - P for Q < 0; sqrt(D) is irrational so no ties.
        Integer t = cand * Q - P;
        bool ge = (t <= 0) || D >= t * t;  // sqrt(D) >= t
        return Q > 0 ? ge : !ge;
    };
    while (!at_least(a)) --a;
    while (at_least(a + 1)) ++a;
    return a;
}

ContinuedFraction rational_cf(Rational x, int depth) {
    ContinuedFraction cf;
    cf.exact = true;
    for (int i = 0; i <= depth; ++i) {
        Integer a = floor_div(num(x), den(x));
        push_convergent(cf, a);
        Rational frac = x - Rational(a);
        if (frac == 0) {
            cf.terminated = true;
            break;
        }
        x = Rational(1) / frac;
    }
    return cf;
}

}  // namespace

ContinuedFraction continued_fraction(const Surd& x, int depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction requires depth >= 1");
    if (x.is_rational()) return rational_cf(x.as_rational(), depth);

    // Integerize to (P + sqrt(D))/Q with Q | (D - P^2).
    Rational a = x.rational_part(), b = x.radical_coeff();
    Integer d = x.radicand();
    Integer s = den(a) * den(b);
    Integer P = num(a) * den(b);  // numerator of a over common denominator s
    Integer bn = num(b) * den(a);
    Integer Q = s;
    if (bn < 0) {  // (P - sqrt(D))/Q == (-P + sqrt(D))/(-Q)
        P = -P;
        Q = -Q;
        bn = -bn;
    }
    Integer D = bn * bn * d;
    if ((D - P * P) % Q != 0) {
        Integer qa = Q < 0 ? -Q : Q;
        P *= qa;
        D *= qa * qa;
        Q *= qa;
    }

    ContinuedFraction cf;
    cf.exact = true;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    std::vector<Integer> quotients;
    std::size_t cycle_from = 0;
    Integer sqrtD = isqrt(D);

    // Quadratic irrationals are eventually periodic; run the state machine
    // until the (P, Q) pair repeats so the period is known at any depth.
    constexpr std::size_t state_cap = 1u << 20;
    while (true) {
        auto state = std::make_pair(P, Q);
        auto it = seen.find(state);
        if (it != seen.end()) {
            cycle_from = it->second;
            break;
        }
        if (seen.size() > state_cap)
            throw std::domain_error("continued_fraction: period exceeds the state cap");
        seen[state] = quotients.size();
        Integer a_k = surd_floor(P, D, Q, sqrtD);
        quotients.push_back(a_k);
        P = a_k * Q - P;
        Q = (D - P * P) / Q;
        if (Q == 0) throw std::domain_error("continued_fraction: radicand was a perfect square");
    }

    cf.period.assign(quotients.begin() + static_cast<long>(cycle_from), quotients.end());
    cf.period_start = cycle_from;
    while (static_cast<int>(quotients.size()) <= depth)
        quotients.push_back(cf.period[(quotients.size() - cycle_from) % cf.period.size()]);
    for (int i = 0; i <= depth; ++i) push_convergent(cf, quotients[static_cast<std::size_t>(i)]);
    return cf;
}

ContinuedFraction continued_fraction(const Rational& lo_in, const Rational& hi_in, int depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction requires depth >= 1");
    if (lo_in > hi_in) throw std::invalid_argument("continued_fraction: empty interval");
    ContinuedFraction cf;
    Rational lo = lo_in, hi = hi_in;
    for (int i = 0; i <= depth; ++i) {
        Integer alo = floor_div(num(lo), den(lo));
        Integer ahi = floor_div(num(hi), den(hi));
        if (alo != ahi)
            throw PrecisionExhausted("cannot certify partial quotient a_" + std::to_string(i) +
                                     ": interval spans an integer");
        push_convergent(cf, alo);
        Rational flo = lo - Rational(alo), fhi = hi - Rational(alo);
        if (i == depth) break;
        if (flo == 0)
            throw PrecisionExhausted("cannot certify partial quotient a_" + std::to_string(i + 1) +
                                     ": interval endpoint is an integer");
        // x -> 1/(x - a) swaps the interval orientation
        Rational nlo = Rational(1) / fhi, nhi = Rational(1) / flo;
        lo = nlo;
        hi = nhi;
    }
    return cf;
}

ContinuedFraction continued_fraction_decimal(const std::string& decimal, int depth, int digits) {
    std::string intpart, fracpart;
    auto dot = decimal.find('.');
    if (dot == std::string::npos) {
        intpart = decimal;
    } else {
        intpart = decimal.substr(0, dot);
        fracpart = decimal.substr(dot + 1);
    }
    if (digits <= 0) digits = cf_digit_budget();
    int significant = static_cast<int>(intpart.size() + fracpart.size());
    int keep = std::min(digits, significant);
    int frac_keep = std::max(0, keep - static_cast<int>(intpart.size()));
    fracpart = fracpart.substr(0, static_cast<std::size_t>(frac_keep));

    Integer scale = ipow(Integer(10), static_cast<unsigned>(fracpart.size()));
    Integer units = Integer(intpart) * scale + (fracpart.empty() ? Integer(0) : Integer(fracpart));
    // truncation uncertainty: one unit in the last kept digit
    Rational lo(units, scale), hi(units + 1, scale);
    return continued_fraction(lo, hi, depth);
}

int cf_digit_budget() {
    if (const char* env = std::getenv("PIEZO_STAB_PRECISION")) {
        int v = std::atoi(env);
        if (v >= 5) return v;
    }
    return 50;
}

std::optional<std::string> builtin_constant_digits(const std::string& name) {
    static const std::map<std::string, std::string> table = {
        {"pi",
         "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803"
         "4825342117067982148086513282306647"},
        {"e",
         "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138"
         "2178525166427427466391932003059921"},
        {"ln2",
         "0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586"
         "3326996418687542001481020570685734"},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

BadlyApproximableReport badly_approximable(const ContinuedFraction& cf) {
    BadlyApproximableReport report;
    report.max_quotient = 0;
    for (std::size_t i = 1; i < cf.partial_quotients.size(); ++i)
        if (cf.partial_quotients[i] > report.max_quotient)
            report.max_quotient = cf.partial_quotients[i];
    if (cf.exact && (!cf.period.empty() || cf.terminated)) {
        // the full expansion is the prefix plus the repeating block: bounded
        report.verdict = BoundedQuotients::Yes;
        for (const Integer& a : cf.period)
            if (a > report.max_quotient) report.max_quotient = a;
    } else {
        // boundedness is not refutable from a finite prefix
        report.verdict = BoundedQuotients::Undetermined;
    }
    return report;
}

}  // namespace piezstab
