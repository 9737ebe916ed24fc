#pragma once

#include "piezstab/params.hpp"

#include <random>

namespace piezstab::testing {

/// Random admissible material constants with small rational entries;
/// alpha = gamma^2 beta + positive slack keeps alpha1 > 0 by construction.
inline MaterialParams random_materials(std::mt19937& rng, bool force_coupled = false) {
    std::uniform_int_distribution<int> small(1, 9);
    auto rat = [&] { return Rational(small(rng), small(rng)); };
    Rational gamma = force_coupled ? rat() : (small(rng) % 3 == 0 ? Rational(0) : rat());
    Rational beta = rat();
    Rational alpha = gamma * gamma * beta + rat();
    return MaterialParams(rat(), alpha, beta, gamma, rat());
}

inline ConfigData epe_acceptance_config() {
    ConfigData d;
    d.variant = Variant::EPE;
    d.rho = 1;
    d.alpha = 2;
    d.beta = 1;
    d.gamma = 1;
    d.mu = 1;
    d.c1 = 1;
    d.c2 = 1;
    d.l1 = 1;
    d.l2 = 2;
    d.has_l2 = true;
    d.L = 3;
    d.damp_a = Rational(5, 4);
    d.damp_b = Rational(7, 4);
    d.damp_d0 = 1;
    return d;
}

inline ConfigData pe_resonant_config() {
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

/// gamma > 0 with sigma+/sigma- = 3 exactly.
inline ConfigData pe_coupled_resonant_config() {
    ConfigData d = pe_resonant_config();
    d.rho = 4;
    d.alpha = 1;
    d.beta = 1;
    d.gamma = Rational(4, 5);
    d.mu = 4;
    return d;
}

}  // namespace piezstab::testing
