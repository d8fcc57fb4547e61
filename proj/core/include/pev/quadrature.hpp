#pragma once

#include <complex>
#include <functional>

namespace pev {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (15 point) integration of a complex-valued
/// integrand over [a, b] to the given relative tolerance. Throws
/// QuadratureFailure when the error estimate does not reach the target.
QuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol = 1e-8, int max_depth = 15);

/// sin(z)/z with the removable singularity handled by series.
double spherical_j0(double z);

}  // namespace pev
