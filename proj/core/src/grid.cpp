#include "pev/grid.hpp"

#include <string>

namespace pev {

SpacetimeGrid::SpacetimeGrid(int nt, int nx, double dt_, double dx_,
                             double t0_, double x0_)
    : n_t(nt), n_x(nx), dt(dt_), dx(dx_), t0(t0_), x0(x0_) {
  if (n_t <= 0 || n_x <= 0) {
    throw Error("grid sizes must be positive, got " + std::to_string(n_t) +
                "x" + std::to_string(n_x));
  }
  if (!(dt > 0.0) || !(dx > 0.0)) {
    throw Error("grid spacings must be positive");
  }
}

std::vector<double> fourier_wavenumbers(int n, double spacing) {
  std::vector<double> k(n);
  const double base = 2.0 * 3.14159265358979323846 / (n * spacing);
  for (int m = 0; m < n; ++m) {
    const int shifted = (m <= (n - 1) / 2) ? m : m - n;
    k[m] = base * shifted;
  }
  return k;
}

std::vector<double> SpacetimeGrid::momenta_t() const {
  return fourier_wavenumbers(n_t, dt);
}

std::vector<double> SpacetimeGrid::momenta_x() const {
  return fourier_wavenumbers(n_x, dx);
}

}  // namespace pev
