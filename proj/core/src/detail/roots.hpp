#pragma once

#include <cmath>

namespace orbitkit::detail {

// Bisection on [lo, hi] where fn(lo) and fn(hi) differ in sign. Runs until
// the bracket stops shrinking in floating point.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double rel_tol = 1e-15, int max_iter = 400) {
    double f_lo = fn(lo);
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f_mid = fn(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= rel_tol * std::abs(mid)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace orbitkit::detail
