#include "pev/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pev/errors.hpp"

namespace pev {

QuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol, int max_depth) {
  using boost::math::quadrature::gauss_kronrod;

  double err_re = 0.0, err_im = 0.0;
  double l1_re = 0.0, l1_im = 0.0;
  const double re = gauss_kronrod<double, 15>::integrate(
      [&f](double x) { return f(x).real(); }, a, b, max_depth, rel_tol,
      &err_re, &l1_re);
  const double im = gauss_kronrod<double, 15>::integrate(
      [&f](double x) { return f(x).imag(); }, a, b, max_depth, rel_tol,
      &err_im, &l1_im);

  QuadratureResult out;
  out.value = {re, im};
  out.error_estimate = std::hypot(err_re, err_im);

  const double scale = std::max(std::abs(out.value), l1_re + l1_im);
  const double floor = 1e-300;
  if (out.error_estimate > rel_tol * std::max(scale, floor) * 10.0) {
    throw QuadratureFailure("integral did not converge: error estimate " +
                            std::to_string(out.error_estimate) +
                            " on magnitude " + std::to_string(scale));
  }
  return out;
}

double spherical_j0(double z) {
  const double az = std::abs(z);
  if (az < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

}  // namespace pev
