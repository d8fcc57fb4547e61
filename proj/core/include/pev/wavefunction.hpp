#pragma once

#include "pev/grid.hpp"
#include "pev/operator.hpp"

namespace pev {

/// Complex amplitudes on a SpacetimeGrid, normalized so that
/// sum |psi|^2 dt dx = 1. Immutable after construction.
class GridWavefunction {
 public:
  /// Normalizes the given amplitudes; throws on zero norm or size mismatch.
  GridWavefunction(SpacetimeGrid grid, ComplexVector amplitudes);

  /// Gaussian packet centered at (t_bar, x_bar) with standard deviations
  /// (sigma_t, sigma_x) and carrier momenta (k0, k1), i.e. a factor
  /// e^{-i k0 t} e^{-i k1 x}. For n_x = 1 the spatial factor is flat.
  static GridWavefunction gaussian(const SpacetimeGrid& grid, double t_bar,
                                   double x_bar, double sigma_t,
                                   double sigma_x, double k0 = 0.0,
                                   double k1 = 0.0);

  /// All weight on the single node nearest (t, x).
  static GridWavefunction point(const SpacetimeGrid& grid, double t, double x);

  /// Uniform weight on the x = x_line column of nodes.
  static GridWavefunction axis_line(const SpacetimeGrid& grid, double x_line);

  const SpacetimeGrid& grid() const { return grid_; }
  const ComplexVector& amplitudes() const { return amp_; }
  double cell_weight() const { return grid_.dt * grid_.dx; }

  Complex at(int i, int j) const { return amp_(grid_.index(i, j)); }

  /// <this|other> with the grid measure.
  Complex inner(const GridWavefunction& other) const;

  /// |psi|^2 dt dx summed over nodes where pred(t, x) holds.
  template <typename Pred>
  double weight_where(Pred&& pred) const {
    double acc = 0.0;
    for (int i = 0; i < grid_.n_t; ++i) {
      for (int j = 0; j < grid_.n_x; ++j) {
        if (pred(grid_.t(i), grid_.x(j))) {
          acc += std::norm(amp_(grid_.index(i, j)));
        }
      }
    }
    return acc * cell_weight();
  }

  /// Spectral application of the momentum operator along one axis,
  /// without forming the dim x dim matrix.
  ComplexVector apply_p(int mu) const;
  /// Pointwise multiplication by the coordinate x^mu.
  ComplexVector apply_position(int mu) const;

 private:
  SpacetimeGrid grid_;
  ComplexVector amp_;
};

/// Applies the axis momentum operator to raw amplitudes; no normalization
/// is performed. Used by GridWavefunction::apply_p and by checks that need
/// repeated applications.
ComplexVector apply_axis_momentum(const SpacetimeGrid& grid,
                                  const ComplexVector& amp, int mu);

/// <psi|A|psi>; throws NotHermitian if A is not hermitian (expectations of
/// non-hermitian operators are not defined here).
double expectation(const Operator& a, const GridWavefunction& psi);

/// <A^2> - <A>^2 computed as ||A psi||^2 - <A>^2, so no matrix square is
/// formed.
double variance(const Operator& a, const GridWavefunction& psi);

}  // namespace pev
