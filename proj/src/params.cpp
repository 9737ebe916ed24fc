#include "piezstab/params.hpp"

#include <algorithm>
#include <sstream>

namespace piezstab {

MaterialParams::MaterialParams(Rational rho_, Rational alpha_, Rational beta_, Rational gamma_,
                               Rational mu_)
    : rho(std::move(rho_)),
      alpha(std::move(alpha_)),
      beta(std::move(beta_)),
      gamma(std::move(gamma_)),
      mu(std::move(mu_)) {
    if (rho.exact <= 0) throw std::invalid_argument("rho must be positive");
    if (alpha.exact <= 0) throw std::invalid_argument("alpha must be positive");
    if (beta.exact <= 0) throw std::invalid_argument("beta must be positive");
    if (gamma.exact < 0) throw std::invalid_argument("gamma must be nonnegative");
    if (mu.exact <= 0) throw std::invalid_argument("mu must be positive");
    Rational a1 = alpha.exact - gamma.exact * gamma.exact * beta.exact;
    if (a1 <= 0) throw std::invalid_argument("alpha1 = alpha - gamma^2*beta must be positive");
    alpha1 = Dual(a1);
}

Geometry::Geometry(Variant v, Rational l1_, Rational l2_, Rational L_) : variant(v) {
    if (v == Variant::EPE) {
        if (!(0 < l1_ && l1_ < l2_ && l2_ < L_))
            throw std::invalid_argument("EPE geometry requires 0 < l1 < l2 < L");
    } else {
        if (!(0 < l1_ && l1_ < L_)) throw std::invalid_argument("PE geometry requires 0 < l1 < L");
        l2_ = 0;
    }
    l1 = Dual(std::move(l1_));
    l2 = Dual(std::move(l2_));
    L = Dual(std::move(L_));
}

double DampingProfile::value(double x) const {
    if (shape == DampingShape::Indicator) return (x > a.approx && x < b.approx) ? d0.approx : 0.0;
    if (samples.empty()) return 0.0;
    double x0 = to_double(samples.front().first);
    double xn = to_double(samples.back().first);
    if (x < x0 || x > xn) return 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        double xa = to_double(samples[i].first), xb = to_double(samples[i + 1].first);
        if (x <= xb) {
            double va = to_double(samples[i].second), vb = to_double(samples[i + 1].second);
            double t = (xb == xa) ? 0.0 : (x - xa) / (xb - xa);
            return va + t * (vb - va);
        }
    }
    return to_double(samples.back().second);
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    if (admissible()) {
        out << "admissible";
    } else {
        out << violations.size() << " violation(s):";
        for (const auto& v : violations) out << " [" << v.key << "] " << v.message << ";";
    }
    for (const auto& f : flags) out << " (flag: " << f << ")";
    return out.str();
}

ValidationReport validate(const ConfigData& d) {
    ValidationReport report;
    auto fail = [&](const std::string& key, const std::string& msg) {
        report.violations.push_back({key, msg});
    };

    if (d.rho <= 0) fail("rho", "must be positive");
    if (d.alpha <= 0) fail("alpha", "must be positive");
    if (d.beta <= 0) fail("beta", "must be positive");
    if (d.gamma < 0) fail("gamma", "must be nonnegative");
    if (d.mu <= 0) fail("mu", "must be positive");
    if (d.rho > 0 && d.alpha > 0 && d.beta > 0 && d.mu > 0 && d.gamma >= 0) {
        Rational a1 = d.alpha - d.gamma * d.gamma * d.beta;
        if (a1 <= 0) fail("alpha1", "alpha - gamma^2*beta must be positive");
    }
    if (d.gamma == 0) report.flags.push_back("decoupled");

    if (d.c2 <= 0) fail("c2", "must be positive");
    if (d.variant == Variant::EPE) {
        if (d.c1 <= 0) fail("c1", "must be positive");
        if (!(0 < d.l1 && d.l1 < d.l2 && d.l2 < d.L)) fail("geometry", "need 0 < l1 < l2 < L");
    } else {
        if (!(0 < d.l1 && d.l1 < d.L)) fail("geometry", "need 0 < l1 < L");
    }

    Rational lo = d.l1;
    Rational hi = (d.variant == Variant::EPE) ? d.l2 : d.L;
    if (d.damp_d0 <= 0) fail("damp.d0", "floor must be positive");
    if (!(d.damp_a < d.damp_b)) fail("damp", "need damp.a < damp.b");
    if (!(lo < d.damp_a && d.damp_b < hi))
        fail("damp", "support (" + format_rational(d.damp_a) + "," + format_rational(d.damp_b) +
                         ") must lie strictly inside the damped layer (" + format_rational(lo) +
                         "," + format_rational(hi) + ")");
    if (d.damp_shape == DampingShape::Sampled) {
        if (d.damp_samples.size() < 2) {
            fail("damp.samples", "sampled profile needs at least two samples");
        } else {
            for (std::size_t i = 0; i + 1 < d.damp_samples.size(); ++i)
                if (!(d.damp_samples[i].first < d.damp_samples[i + 1].first)) {
                    fail("damp.samples", "sample abscissae must be strictly increasing");
                    break;
                }
            for (const auto& [x, v] : d.damp_samples) {
                if (v < 0) fail("damp.samples", "profile must be nonnegative");
                if (x < lo || x > hi) fail("damp.samples", "samples must lie in the damped layer");
            }
            // floor on the support: piecewise-linear minimum over [a,b] is attained
            // at sample points inside and at the interpolated endpoints
            if (report.admissible()) {
                DampingProfile probe;
                probe.a = Dual(d.damp_a);
                probe.b = Dual(d.damp_b);
                probe.d0 = Dual(d.damp_d0);
                probe.shape = DampingShape::Sampled;
                probe.samples = d.damp_samples;
                double floor = to_double(d.damp_d0);
                bool ok = probe.value(to_double(d.damp_a)) >= floor &&
                          probe.value(to_double(d.damp_b)) >= floor;
                for (const auto& [x, v] : d.damp_samples)
                    if (x > d.damp_a && x < d.damp_b && v < d.damp_d0) ok = false;
                if (!ok) fail("damp.samples", "profile must stay >= damp.d0 on (damp.a, damp.b)");
            }
        }
    }
    return report;
}

SystemConfig SystemConfig::from(const ConfigData& d) {
    ValidationReport report = validate(d);
    if (!report.admissible()) throw ConfigError("invalid config: " + report.summary());
    MaterialParams m(d.rho, d.alpha, d.beta, d.gamma, d.mu);
    Geometry g = (d.variant == Variant::EPE) ? Geometry(Variant::EPE, d.l1, d.l2, d.L)
                                             : Geometry(Variant::PE, d.l1, 0, d.L);
    DampingProfile damp;
    damp.a = Dual(d.damp_a);
    damp.b = Dual(d.damp_b);
    damp.d0 = Dual(d.damp_d0);
    damp.shape = d.damp_shape;
    damp.samples = d.damp_samples;
    return SystemConfig(std::move(m), std::move(g), Dual(d.c1), Dual(d.c2), std::move(damp));
}

ConfigData SystemConfig::data() const {
    ConfigData d;
    d.variant = geometry.variant;
    d.rho = materials.rho.exact;
    d.alpha = materials.alpha.exact;
    d.beta = materials.beta.exact;
    d.gamma = materials.gamma.exact;
    d.mu = materials.mu.exact;
    d.c1 = c1.exact;
    d.c2 = c2.exact;
    d.l1 = geometry.l1.exact;
    d.l2 = geometry.l2.exact;
    d.L = geometry.L.exact;
    d.has_l2 = (d.variant == Variant::EPE);
    d.damp_a = damping.a.exact;
    d.damp_b = damping.b.exact;
    d.damp_d0 = damping.d0.exact;
    d.damp_shape = damping.shape;
    d.damp_samples = damping.samples;
    return d;
}

}  // namespace piezstab
