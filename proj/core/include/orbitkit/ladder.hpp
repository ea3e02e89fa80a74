#pragma once

#include <optional>
#include <string>

#include "orbitkit/potential.hpp"
#include "orbitkit/radial.hpp"

namespace orbitkit {

enum class LadderBranch { harmonic, coulomb };
enum class LadderDirection { up, down };

std::string to_string(LadderBranch branch);
std::string to_string(LadderDirection direction);

/// Factorization of r^2 d^2/dr^2 - 2a r^(nu+2) + 2 E_n r^2 as
/// (r d/dr - s(r) + A)(r d/dr + s(r) + B) - AB with A + B + 1 = 0, where
/// s = sqrt(2a) r^2 (harmonic) or s = -a r / n (Coulomb).
struct LadderSpec {
    LadderBranch branch;
    double n;     // WKB quantum number of the state the operators act on
    double A;
    double B;
    int n_step;   // label shift of the raising operator: +2 harmonic, +1 Coulomb
    double s_coefficient;  // sqrt(2a) or -a/n
    // Coulomb only: M(k) factors paired with raising / lowering.
    std::optional<double> scaling_up;
    std::optional<double> scaling_down;
};

/// Throws "factorization_impossible" unless nu = 2 with a > 0 or nu = -1 with a < 0.
LadderSpec factorize(const CombinedPotential& potential, double n);

/// (M(k) f)(r) = f(k r) via four-point Lagrange interpolation; zero past r_max.
GridFunction scaling_apply(double k, const GridFunction& f);

/// r df/dr with fourth-order central differences (one-sided at the ends).
GridFunction r_derivative(const GridFunction& f);

/// d^2 f/dr^2, fourth order.
GridFunction second_derivative(const GridFunction& f);

struct LadderResult {
    GridFunction chi;   // normalized, sign-fixed; zero when annihilated
    double raw_norm;    // norm before normalization, relative to the input
    bool annihilated;
};

/// Energy raising/lowering at fixed l'. Raising maps n_r to n_r + 1.
LadderResult apply_ladder(const EigenSolution& sol, const LadderSpec& spec, LadderDirection direction);

/// Flips the sign so the first lobe above 1e-3 of the peak is positive.
void fix_sign(GridFunction& f);

struct FactorizationResidual {
    double lowering_first;  // (rD - s + A)(rD + s + B) chi vs D_n chi + AB chi
    double raising_first;   // (rD + s - A')(rD - s + B') ordering
    double eigen;           // D_n chi vs l'(l'+1) chi
    double max() const noexcept;
};

/// Max-norm residuals, relative to max |chi|, over the grid interior.
FactorizationResidual verify_factorization_identity(const EigenSolution& sol, const LadderSpec& spec,
                                                    const CombinedPotential& potential);

struct AngularLadderReport {
    int l;
    double l_prime;
    double l_prime_next;
    double spacing;      // l'(l+1) - l'(l)
    bool unit_spacing;   // |spacing - 1| < 1e-12
};

/// Angular-momentum ladders would need l' spacing exactly 1 between l and l+1.
AngularLadderReport no_angular_ladder_check(double b, int l);

}  // namespace orbitkit
