#pragma once

#include <cstddef>
#include <vector>

#include "orbitkit/potential.hpp"

namespace orbitkit {

/// Uniform radial grid r_i = r_min + i h, i = 0 .. n_points - 1.
struct RadialGrid {
    double r_min = 1e-6;
    double r_max = 50.0;
    std::size_t n_points = 20000;

    double h() const noexcept { return (r_max - r_min) / static_cast<double>(n_points - 1); }
    double r(std::size_t i) const noexcept { return r_min + static_cast<double>(i) * h(); }
};

struct GridFunction {
    RadialGrid grid;
    std::vector<double> values;
};

/// Composite Simpson integral of samples on the grid.
double integrate(const RadialGrid& grid, const std::vector<double>& values);
double inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

/// l' with l'(l'+1) = l(l+1) + 2b. Throws "supercritical" when
/// 1 + 2b/(l+1/2)^2 <= 0, i.e. b <= -(l+1/2)^2/2.
double effective_l(int l, double b);

/// 1/|a| for nu = -1, (2a)^(-1/4) for nu = 2, |a|^(-1/(nu+2)) otherwise.
double characteristic_length(const CombinedPotential& potential);

/// Grid with the default density (50 characteristic lengths over 20000
/// points) stretched, at fixed spacing, until states up to max_n_r decay by
/// e^-30 before r_max.
RadialGrid default_grid(const CombinedPotential& potential, double l_prime, int max_n_r);

class RadialProblem {
public:
    RadialProblem(const CombinedPotential& potential, int l, const RadialGrid& grid);
    /// Uses default_grid sized for states up to max_n_r.
    RadialProblem(const CombinedPotential& potential, int l, int max_n_r = 4);

    const CombinedPotential& potential() const noexcept { return potential_; }
    int l() const noexcept { return l_; }
    double l_prime() const noexcept { return l_prime_; }
    const RadialGrid& grid() const noexcept { return grid_; }

private:
    CombinedPotential potential_;
    int l_;
    double l_prime_;
    RadialGrid grid_;
};

struct EigenSolution {
    int n_r = 0;
    double E = 0.0;
    GridFunction chi;         // normalized, positive first lobe
    double n = 0.0;           // WKB quantum number n_r + offset(l')
    double l_prime = 0.0;
    double matching_defect = 0.0;
};

/// Numerov shooting: node-count bisection isolates the n_r-th level, then the
/// Casoratian of the outward and inward solutions at the outer turning point
/// is driven to zero.
EigenSolution solve_radial(const RadialProblem& problem, int n_r);

/// Number of sign changes among samples above a relative threshold.
int count_nodes(const std::vector<double>& values, double rel_threshold = 1e-9);

}  // namespace orbitkit
