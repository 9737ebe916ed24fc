#pragma once

#include "piezstab/exact.hpp"
#include "piezstab/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace piezstab {

enum class Variant { EPE, PE };

inline const char* variant_name(Variant v) { return v == Variant::EPE ? "EPE" : "PE"; }

/// One physical quantity kept in exact rational and floating form side by side.
struct Dual {
    Rational exact;
    double approx = 0.0;

    Dual() = default;
    Dual(Rational r) : exact(std::move(r)), approx(to_double(exact)) {}  // NOLINT: implicit
    operator double() const { return approx; }                          // NOLINT: implicit
};

/// Piezoelectric material constants. Construction enforces positivity and
/// alpha1 = alpha - gamma^2 * beta > 0.
struct MaterialParams {
    Dual rho, alpha, beta, gamma, mu;
    Dual alpha1;

    MaterialParams(Rational rho_, Rational alpha_, Rational beta_, Rational gamma_, Rational mu_);

    bool coupled() const { return gamma.exact > 0; }
};

struct Geometry {
    Variant variant = Variant::PE;
    Dual l1, l2, L;  // l2 is meaningful for EPE only

    Geometry() = default;
    Geometry(Variant v, Rational l1_, Rational l2_, Rational L_);

    /// Layer hosting the damping term: (l1,l2) for EPE, (l1,L) for PE.
    std::pair<Rational, Rational> damped_layer() const {
        return variant == Variant::EPE ? std::make_pair(l1.exact, l2.exact)
                                       : std::make_pair(l1.exact, L.exact);
    }
};

enum class DampingShape { Indicator, Sampled };

struct DampingProfile {
    Dual a, b;   // support interval, strictly inside the damped layer
    Dual d0;     // positive floor on (a,b)
    DampingShape shape = DampingShape::Indicator;
    std::vector<std::pair<Rational, Rational>> samples;  // (x, d(x)), piecewise linear

    /// Pointwise value; indicator profiles are d0 on (a,b) and 0 outside,
    /// sampled profiles interpolate linearly and vanish off the sample range.
    double value(double x) const;
};

/// Raw, not-yet-validated parameter bag as read from a config file.
struct ConfigData {
    Variant variant = Variant::PE;
    Rational rho = 1, alpha = 1, beta = 1, gamma = 0, mu = 1;
    Rational c1 = 1, c2 = 1;
    Rational l1 = 1, l2 = 0, L = 2;
    Rational damp_a = 0, damp_b = 0, damp_d0 = 1;
    DampingShape damp_shape = DampingShape::Indicator;
    std::vector<std::pair<Rational, Rational>> damp_samples;
    bool has_l2 = false;
};

struct Violation {
    std::string key;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> flags;  // non-fatal notes, e.g. "decoupled" for gamma = 0
    bool admissible() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate(const ConfigData& data);

/// Validated, immutable system description.
struct SystemConfig {
    MaterialParams materials;
    Geometry geometry;
    Dual c1, c2;
    DampingProfile damping;

    /// Throws ConfigError when validate() reports violations.
    static SystemConfig from(const ConfigData& data);

    Variant variant() const { return geometry.variant; }
    ConfigData data() const;  // canonical raw form (for serialization)

  private:
    SystemConfig(MaterialParams m, Geometry g, Dual c1_, Dual c2_, DampingProfile d)
        : materials(std::move(m)),
          geometry(std::move(g)),
          c1(std::move(c1_)),
          c2(std::move(c2_)),
          damping(std::move(d)) {}
};

}  // namespace piezstab
