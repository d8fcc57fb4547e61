#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pev/channel.hpp"
#include "pev/grid.hpp"
#include "pev/operator.hpp"

namespace pev {

using FourMomentum = std::array<double, 4>;

/// k_mu k^mu with metric (+,-,-,-).
double minkowski_square(const FourMomentum& k);

/// Momentum operator i d/dx^mu on the periodic grid, built from the DFT
/// mode basis so plane waves e^{-i k x} are exact eigenvectors with
/// eigenvalue k. mu = 0 acts on the time axis, mu = 1 on the space axis.
Operator p_mu_operator(const SpacetimeGrid& grid, int mu);

/// Multiplication operator by the coordinate x^mu (diagonal).
Operator position_operator(const SpacetimeGrid& grid, int mu);

/// Unit-norm grid vector of the plane wave e^{-i k0 t} (x) spatial_state.
/// spatial_state may be empty for n_x = 1.
ComplexVector temporal_mode(const SpacetimeGrid& grid, double k0,
                            const ComplexVector& spatial_state);

/// Coefficients of the quadratic-ansatz generator
///   a0 p0 + a00 p0^2 + B (p1^2 + ...)
/// plus the optional spatial hamiltonian and temporal extension terms.
struct GeneratorSpec {
  double a0 = 1.0;
  double a00 = 0.0;
  double b = 0.0;  // spatial quadratic coefficient; particle mass 1/(2B)
  std::optional<Operator> hamiltonian;  // acts on the spatial factor
  double bt_inv = 0.0;                  // temporal kinetic coefficient
  std::vector<double> vt;               // temporal potential sampled on the t axis
};

/// Free quadratic ansatz a0 p0 + a00 p0^2 + B p1^2 on the grid; the mass
/// of the equivalent Schrödinger particle is 1/(2B), so B must be > 0.
Operator free_particle_generator(const SpacetimeGrid& grid,
                                 const GeneratorSpec& spec);

/// W_S = p0 (x) 1 - 1 (x) H. Throws NotHermitian for a non-hermitian H.
Operator schrodinger_generator(const SpacetimeGrid& grid, const Operator& h);

/// W_GS = p0 - H + 1/2 bt_inv p0^2 + V_T(x0). Reduces exactly to
/// schrodinger_generator when bt_inv = 0 and vt is empty or zero.
Operator extended_schrodinger_generator(const SpacetimeGrid& grid,
                                        const GeneratorSpec& spec);

/// One orthogonal-resolution channel per clustered eigenvalue of the
/// hermitian generator; channel labels are the eigenvalue indices.
ChannelFamily channels_from_generator(const Operator& w,
                                      double cluster_tol = -1.0, int step = 0);

/// Mass-shell band membership: (m0 - G/2)^2 <= k^2 <= (m0 + G/2)^2, closed
/// at both edges. For gamma = 0 this degenerates to the exact shell
/// k^2 == m0^2 (floating equality; no tolerance is applied).
/// Throws InvalidWidth unless gamma/2 < m0 and gamma >= 0.
class MassShellBand {
 public:
  MassShellBand(double m0, double gamma);

  double m0() const { return m0_; }
  double gamma() const { return gamma_; }
  double lower() const { return lo_; }  // (m0 - G/2)^2
  double upper() const { return hi_; }  // (m0 + G/2)^2

  bool contains(const FourMomentum& k) const;
  bool contains_mass_squared(double k2) const;

 private:
  double m0_, gamma_, lo_, hi_;
};

/// Dirac representation gamma matrices, index order (g0, g1, g2, g3).
std::array<Operator, 4> dirac_gamma_matrices();

/// Max over (mu, nu) of || {g_mu, g_nu} - 2 g^{mu nu} ||_max.
double gamma_anticommutator_residual(const std::array<Operator, 4>& gammas);

/// gamma^mu p_mu on spinor (x) grid for the 1+1D lattice (mu = 0, 1 only).
/// Not hermitian; satisfies W† = g0 W g0, which dirac_generator_self_test
/// verifies together with the anticommutator relations.
Operator dirac_generator(const SpacetimeGrid& grid);
double dirac_generator_self_test(const SpacetimeGrid& grid);

/// p0^2 - p1^2 on the grid.
Operator klein_gordon_generator(const SpacetimeGrid& grid);

/// (p - A)_mu (p - A)^mu with the sampled field A_mu(x) applied as
/// diagonal multiplication operators. Field vectors are indexed like grid
/// nodes; empty vectors mean A_mu = 0.
Operator minimally_coupled_kg(const SpacetimeGrid& grid,
                              const std::vector<double>& a_t,
                              const std::vector<double>& a_x);

}  // namespace pev
