#pragma once

namespace orbitkit {

/// Gamma function for real arguments via the Lanczos approximation (g = 7,
/// nine terms) with reflection below 1/2. Relative error ~1e-15 away from the
/// poles at non-positive integers, where the result is NaN.
double gamma_fn(double x);

}  // namespace orbitkit
