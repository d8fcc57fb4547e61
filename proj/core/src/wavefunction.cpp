#include "pev/wavefunction.hpp"

#include <cmath>
#include <limits>

namespace pev {

GridWavefunction::GridWavefunction(SpacetimeGrid grid, ComplexVector amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
  if (amp_.size() != grid_.dim()) {
    throw DimensionMismatch("wavefunction size " + std::to_string(amp_.size()) +
                            " vs grid dim " + std::to_string(grid_.dim()));
  }
  if (!amp_.allFinite()) {
    throw Error("wavefunction amplitudes must be finite");
  }
  const double n2 = amp_.squaredNorm() * cell_weight();
  if (!(n2 > 0.0)) {
    throw Error("cannot normalize the zero wavefunction");
  }
  amp_ /= std::sqrt(n2);
}

GridWavefunction GridWavefunction::gaussian(const SpacetimeGrid& grid,
                                            double t_bar, double x_bar,
                                            double sigma_t, double sigma_x,
                                            double k0, double k1) {
  if (!(sigma_t > 0.0)) {
    throw Error("gaussian packet needs sigma_t > 0");
  }
  ComplexVector amp(grid.dim());
  for (int i = 0; i < grid.n_t; ++i) {
    const double dt_rel = (grid.t(i) - t_bar) / sigma_t;
    const double env_t = std::exp(-0.25 * dt_rel * dt_rel);
    for (int j = 0; j < grid.n_x; ++j) {
      double env = env_t;
      if (grid.n_x > 1) {
        if (!(sigma_x > 0.0)) {
          throw Error("gaussian packet needs sigma_x > 0 on a 2d grid");
        }
        const double dx_rel = (grid.x(j) - x_bar) / sigma_x;
        env *= std::exp(-0.25 * dx_rel * dx_rel);
      }
      const double phase = -k0 * grid.t(i) - k1 * grid.x(j);
      amp(grid.index(i, j)) =
          env * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return GridWavefunction(grid, std::move(amp));
}

GridWavefunction GridWavefunction::point(const SpacetimeGrid& grid, double t,
                                         double x) {
  int bi = 0, bj = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_t; ++i) {
    for (int j = 0; j < grid.n_x; ++j) {
      const double d = std::abs(grid.t(i) - t) + std::abs(grid.x(j) - x);
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  ComplexVector amp = ComplexVector::Zero(grid.dim());
  amp(grid.index(bi, bj)) = 1.0;
  return GridWavefunction(grid, std::move(amp));
}

GridWavefunction GridWavefunction::axis_line(const SpacetimeGrid& grid,
                                             double x_line) {
  int bj = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n_x; ++j) {
    const double d = std::abs(grid.x(j) - x_line);
    if (d < best) {
      best = d;
      bj = j;
    }
  }
  ComplexVector amp = ComplexVector::Zero(grid.dim());
  for (int i = 0; i < grid.n_t; ++i) amp(grid.index(i, bj)) = 1.0;
  return GridWavefunction(grid, std::move(amp));
}

Complex GridWavefunction::inner(const GridWavefunction& other) const {
  if (amp_.size() != other.amp_.size()) {
    throw DimensionMismatch("inner: wavefunction sizes differ");
  }
  return amp_.dot(other.amp_) * cell_weight();
}

ComplexVector apply_axis_momentum(const SpacetimeGrid& grid,
                                  const ComplexVector& amp, int mu) {
  if (mu != 0 && mu != 1) {
    throw Error("apply_axis_momentum: mu must be 0 or 1");
  }
  if (amp.size() != grid.dim()) {
    throw DimensionMismatch("apply_axis_momentum: amplitude size mismatch");
  }
  const int n = (mu == 0) ? grid.n_t : grid.n_x;
  const double spacing = (mu == 0) ? grid.dt : grid.dx;
  const double origin = (mu == 0) ? grid.t0 : grid.x0;
  const std::vector<double> ks = fourier_wavenumbers(n, spacing);

  // Mode matrix M(m, j) = e^{-i k_m x_j} / sqrt(n); p = M† diag(k) M per
  // axis, applied column/row-wise.
  ComplexMatrix modes(n, n);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      const double phase = -ks[m] * (origin + j * spacing);
      modes(m, j) = Complex(std::cos(phase), std::sin(phase)) /
                    std::sqrt(static_cast<double>(n));
    }
  }

  ComplexVector out(grid.dim());
  if (mu == 0) {
    for (int j = 0; j < grid.n_x; ++j) {
      ComplexVector col(grid.n_t);
      for (int i = 0; i < grid.n_t; ++i) col(i) = amp(grid.index(i, j));
      ComplexVector coef = modes * col;
      for (int m = 0; m < grid.n_t; ++m) coef(m) *= ks[m];
      ComplexVector back = modes.adjoint() * coef;
      for (int i = 0; i < grid.n_t; ++i) out(grid.index(i, j)) = back(i);
    }
  } else {
    for (int i = 0; i < grid.n_t; ++i) {
      ComplexVector row(grid.n_x);
      for (int j = 0; j < grid.n_x; ++j) row(j) = amp(grid.index(i, j));
      ComplexVector coef = modes * row;
      for (int m = 0; m < grid.n_x; ++m) coef(m) *= ks[m];
      ComplexVector back = modes.adjoint() * coef;
      for (int j = 0; j < grid.n_x; ++j) out(grid.index(i, j)) = back(j);
    }
  }
  return out;
}

ComplexVector GridWavefunction::apply_p(int mu) const {
  return apply_axis_momentum(grid_, amp_, mu);
}

ComplexVector GridWavefunction::apply_position(int mu) const {
  if (mu != 0 && mu != 1) {
    throw Error("apply_position: mu must be 0 or 1");
  }
  ComplexVector out(grid_.dim());
  for (int i = 0; i < grid_.n_t; ++i) {
    for (int j = 0; j < grid_.n_x; ++j) {
      const double c = (mu == 0) ? grid_.t(i) : grid_.x(j);
      out(grid_.index(i, j)) = c * amp_(grid_.index(i, j));
    }
  }
  return out;
}

double expectation(const Operator& a, const GridWavefunction& psi) {
  if (a.dim() != psi.grid().dim()) {
    throw DimensionMismatch("expectation: operator dim vs grid dim");
  }
  if (!a.is_hermitian()) {
    throw NotHermitian("expectation: operator residual " +
                       std::to_string(a.hermiticity_residual()));
  }
  const ComplexVector av = a.matrix() * psi.amplitudes();
  return (psi.amplitudes().dot(av)).real() * psi.cell_weight();
}

double variance(const Operator& a, const GridWavefunction& psi) {
  if (a.dim() != psi.grid().dim()) {
    throw DimensionMismatch("variance: operator dim vs grid dim");
  }
  if (!a.is_hermitian()) {
    throw NotHermitian("variance: operator residual " +
                       std::to_string(a.hermiticity_residual()));
  }
  const double w = psi.cell_weight();
  const ComplexVector av = a.matrix() * psi.amplitudes();
  const double mean = (psi.amplitudes().dot(av)).real() * w;
  const double second = av.squaredNorm() * w;
  return second - mean * mean;
}

}  // namespace pev
