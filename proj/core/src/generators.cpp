#include "pev/generators.hpp"

#include <cmath>
#include <string>

#include "pev/spectral.hpp"

namespace pev {

namespace {

// DFT-diagonal momentum on one axis: sum_m k_m |k_m><k_m| with mode
// vectors e^{-i k_m x_j} / sqrt(n).
ComplexMatrix axis_momentum(int n, double spacing, double origin) {
  const std::vector<double> ks = fourier_wavenumbers(n, spacing);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  ComplexVector mode(n);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      const double phase = -ks[m] * (origin + j * spacing);
      mode(j) = Complex(std::cos(phase), std::sin(phase)) / std::sqrt(double(n));
    }
    out += ks[m] * (mode * mode.adjoint());
  }
  // Hermitian up to roundoff; symmetrize so the documented 1e-10 bound
  // holds with margin.
  ComplexMatrix sym = 0.5 * (out + out.adjoint().eval());
  return sym;
}

}  // namespace

double minkowski_square(const FourMomentum& k) {
  return k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
}

Operator p_mu_operator(const SpacetimeGrid& grid, int mu) {
  if (mu != 0 && mu != 1) {
    throw Error("p_mu_operator: mu must be 0 or 1, got " + std::to_string(mu));
  }
  if (mu == 0) {
    ComplexMatrix pt = axis_momentum(grid.n_t, grid.dt, grid.t0);
    ComplexMatrix ix = ComplexMatrix::Identity(grid.n_x, grid.n_x);
    return tensor(Operator(std::move(pt)), Operator(std::move(ix)));
  }
  ComplexMatrix it = ComplexMatrix::Identity(grid.n_t, grid.n_t);
  ComplexMatrix px = axis_momentum(grid.n_x, grid.dx, grid.x0);
  return tensor(Operator(std::move(it)), Operator(std::move(px)));
}

Operator position_operator(const SpacetimeGrid& grid, int mu) {
  if (mu != 0 && mu != 1) {
    throw Error("position_operator: mu must be 0 or 1");
  }
  const int d = grid.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < grid.n_t; ++i) {
    for (int j = 0; j < grid.n_x; ++j) {
      out(grid.index(i, j), grid.index(i, j)) =
          (mu == 0) ? grid.t(i) : grid.x(j);
    }
  }
  return Operator(std::move(out));
}

ComplexVector temporal_mode(const SpacetimeGrid& grid, double k0,
                            const ComplexVector& spatial_state) {
  ComplexVector spatial = spatial_state;
  if (spatial.size() == 0) {
    spatial = ComplexVector::Ones(grid.n_x);
  }
  if (spatial.size() != grid.n_x) {
    throw DimensionMismatch("temporal_mode: spatial state size " +
                            std::to_string(spatial.size()) + " vs n_x " +
                            std::to_string(grid.n_x));
  }
  ComplexVector out(grid.dim());
  for (int i = 0; i < grid.n_t; ++i) {
    const double phase = -k0 * grid.t(i);
    const Complex amp(std::cos(phase), std::sin(phase));
    for (int j = 0; j < grid.n_x; ++j) {
      out(grid.index(i, j)) = amp * spatial(j);
    }
  }
  out /= out.norm();
  return out;
}

Operator free_particle_generator(const SpacetimeGrid& grid,
                                 const GeneratorSpec& spec) {
  if (!(spec.b > 0.0)) {
    throw Error("free_particle_generator: B must be positive (mass 1/(2B))");
  }
  Operator p0 = p_mu_operator(grid, 0);
  Operator p1 = p_mu_operator(grid, 1);
  Operator w = spec.a0 * p0 + spec.b * (p1 * p1);
  if (spec.a00 != 0.0) {
    w = w + spec.a00 * (p0 * p0);
  }
  return w;
}

Operator schrodinger_generator(const SpacetimeGrid& grid, const Operator& h) {
  if (h.dim() != grid.n_x) {
    throw DimensionMismatch("schrodinger_generator: hamiltonian dim " +
                            std::to_string(h.dim()) + " vs n_x " +
                            std::to_string(grid.n_x));
  }
  if (!h.is_hermitian()) {
    throw NotHermitian("schrodinger_generator: hamiltonian residual " +
                       std::to_string(h.hermiticity_residual()));
  }
  Operator p0 = p_mu_operator(grid, 0);
  Operator it = Operator::identity(grid.n_t);
  return p0 - tensor(it, h);
}

Operator extended_schrodinger_generator(const SpacetimeGrid& grid,
                                        const GeneratorSpec& spec) {
  Operator h = spec.hamiltonian.value_or(Operator::zero(grid.n_x));
  Operator w = schrodinger_generator(grid, h);

  if (spec.bt_inv < 0.0) {
    throw Error("extended_schrodinger_generator: bt_inv must be >= 0");
  }
  if (spec.bt_inv > 0.0) {
    Operator p0 = p_mu_operator(grid, 0);
    w = w + (0.5 * spec.bt_inv) * (p0 * p0);
  }
  if (!spec.vt.empty()) {
    if (static_cast<int>(spec.vt.size()) != grid.n_t) {
      throw DimensionMismatch(
          "extended_schrodinger_generator: vt must have n_t samples");
    }
    const int d = grid.dim();
    ComplexMatrix vt = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < grid.n_t; ++i) {
      for (int j = 0; j < grid.n_x; ++j) {
        vt(grid.index(i, j), grid.index(i, j)) = spec.vt[i];
      }
    }
    w = w + Operator(std::move(vt));
  }
  return w;
}

ChannelFamily channels_from_generator(const Operator& w, double cluster_tol,
                                      int step) {
  SpectralDecomposition sd = spectral_decompose(w, cluster_tol);
  ChannelFamily family =
      ChannelFamily::orthogonal_resolution(std::move(sd.projectors), step);
  return family;
}

MassShellBand::MassShellBand(double m0, double gamma)
    : m0_(m0), gamma_(gamma) {
  if (gamma < 0.0) {
    throw InvalidWidth("mass band width must be nonnegative");
  }
  if (!(gamma / 2.0 < m0)) {
    throw InvalidWidth("mass band requires gamma/2 < m0, got gamma = " +
                       std::to_string(gamma) + ", m0 = " + std::to_string(m0));
  }
  const double lo = m0 - gamma / 2.0;
  const double hi = m0 + gamma / 2.0;
  lo_ = lo * lo;
  hi_ = hi * hi;
}

bool MassShellBand::contains_mass_squared(double k2) const {
  return k2 >= lo_ && k2 <= hi_;
}

bool MassShellBand::contains(const FourMomentum& k) const {
  return contains_mass_squared(minkowski_square(k));
}

std::array<Operator, 4> dirac_gamma_matrices() {
  const Complex I(0.0, 1.0);
  ComplexMatrix g0 = ComplexMatrix::Zero(4, 4);
  g0(0, 0) = 1;
  g0(1, 1) = 1;
  g0(2, 2) = -1;
  g0(3, 3) = -1;

  auto offdiag = [](const ComplexMatrix& s) {
    ComplexMatrix g = ComplexMatrix::Zero(4, 4);
    g.block(0, 2, 2, 2) = s;
    g.block(2, 0, 2, 2) = -s;
    return g;
  };
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;

  return {Operator(std::move(g0)), Operator(offdiag(sx)), Operator(offdiag(sy)),
          Operator(offdiag(sz))};
}

double gamma_anticommutator_residual(const std::array<Operator, 4>& gammas) {
  const double metric[4] = {1.0, -1.0, -1.0, -1.0};
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      Operator anti = anticommutator(gammas[mu], gammas[nu]);
      ComplexMatrix dev = anti.matrix();
      if (mu == nu) {
        dev -= 2.0 * metric[mu] * ComplexMatrix::Identity(4, 4);
      }
      worst = std::max(worst, dev.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Operator dirac_generator(const SpacetimeGrid& grid) {
  const auto gammas = dirac_gamma_matrices();
  Operator p0 = p_mu_operator(grid, 0);
  Operator p1 = p_mu_operator(grid, 1);
  // Covariant p_mu with the metric handled by the gamma index position:
  // gamma^mu p_mu = g0 p_0 + g1 p_1.
  return tensor(gammas[0], p0) + tensor(gammas[1], p1);
}

double dirac_generator_self_test(const SpacetimeGrid& grid) {
  const auto gammas = dirac_gamma_matrices();
  double worst = gamma_anticommutator_residual(gammas);

  Operator w = dirac_generator(grid);
  Operator g0_full = tensor(gammas[0], Operator::identity(grid.dim()));
  // W† = g0 W g0 for the Dirac-representation construction.
  ComplexMatrix dev =
      w.adjoint().matrix() - (g0_full * w * g0_full).matrix();
  worst = std::max(worst, dev.cwiseAbs().maxCoeff());
  return worst;
}

Operator klein_gordon_generator(const SpacetimeGrid& grid) {
  Operator p0 = p_mu_operator(grid, 0);
  Operator p1 = p_mu_operator(grid, 1);
  return p0 * p0 - p1 * p1;
}

Operator minimally_coupled_kg(const SpacetimeGrid& grid,
                              const std::vector<double>& a_t,
                              const std::vector<double>& a_x) {
  const int d = grid.dim();
  auto field_diag = [&](const std::vector<double>& field) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    if (field.empty()) return m;
    if (static_cast<int>(field.size()) != d) {
      throw DimensionMismatch(
          "minimally_coupled_kg: field must have one sample per node");
    }
    for (int i = 0; i < d; ++i) m(i, i) = field[i];
    return m;
  };

  Operator d0 = p_mu_operator(grid, 0) - Operator(field_diag(a_t));
  Operator d1 = p_mu_operator(grid, 1) - Operator(field_diag(a_x));
  return d0 * d0 - d1 * d1;
}

}  // namespace pev
