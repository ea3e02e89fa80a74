#pragma once

#include "orbitkit/potential.hpp"

namespace orbitkit {

/// Semiclassical spectrum E_n = alpha_nu n^(2 nu / (nu + 2)).
struct WkbSpectrumParams {
    double alpha_nu;
    double exponent;  // 2 nu / (nu + 2)
    double n_offset;  // n = n_r + n_offset
};

/// Supported branches: a > 0 with nu > 0 (n_offset = l'/2 + 3/4) and a < 0
/// with -2 < nu < 0 (n_offset = (2 l' + nu + 3) / (2 (nu + 2))).
///
/// For a < 0 the coefficient is
///   -(-a)^(2/(nu+2)) 2^(nu/(nu+2)) [(-nu) sqrt(pi) G(1 - 1/nu) / G(-1/2 - 1/nu)]^(2nu/(nu+2)),
/// which gives alpha_{-1} = -a^2/2 and matches the action-integral
/// quantization for every nu in (-2, 0).
WkbSpectrumParams wkb_params(const CombinedPotential& potential, double l_prime);

double wkb_quantum_number(const CombinedPotential& potential, double l_prime, int n_r);

double wkb_energy(const CombinedPotential& potential, double n);

}  // namespace orbitkit
