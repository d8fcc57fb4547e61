#pragma once

#include <vector>

#include "pev/errors.hpp"

namespace pev {

/// Uniform periodic 1+1D lattice in (x0, x1). Node (i, j) sits at
/// (t0 + i dt, x0 + j dx); the flat index is i * n_x + j (time major), so
/// operators on the product space factor as A_t (x) B_x under tensor().
/// Spacings are in natural units (eV^-1). Boundary conditions are periodic
/// in both directions; momentum operators are exact on the grid's Fourier
/// modes.
struct SpacetimeGrid {
  int n_t = 0;
  int n_x = 1;
  double dt = 1.0;
  double dx = 1.0;
  double t0 = 0.0;
  double x0 = 0.0;

  SpacetimeGrid() = default;
  SpacetimeGrid(int nt, int nx, double dt_, double dx_, double t0_ = 0.0,
                double x0_ = 0.0);

  int dim() const { return n_t * n_x; }
  int index(int i, int j) const { return i * n_x + j; }
  double t(int i) const { return t0 + i * dt; }
  double x(int j) const { return x0 + j * dx; }
  double t_extent() const { return n_t * dt; }
  double x_extent() const { return n_x * dx; }

  /// DFT wavenumbers 2 pi m / (n d), m in [-n/2, n/2).
  std::vector<double> momenta_t() const;
  std::vector<double> momenta_x() const;
};

std::vector<double> fourier_wavenumbers(int n, double spacing);

}  // namespace pev
