#pragma once

#include <vector>

#include "pev/operator.hpp"

namespace pev {

/// Eigenvalues and eigenprojectors of a hermitian operator, one projector
/// per clustered eigenvalue. Eigenvalues are strictly increasing; the
/// projectors are hermitian, idempotent, mutually orthogonal and sum to
/// the identity.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Operator> projectors;

  Operator reconstruct() const;

  /// Largest of the projector-family residuals (hermiticity,
  /// orthogonality/idempotence, completeness).
  double projector_residual() const;
};

/// Default clustering tolerance: 1e-9 relative to the spectral range.
double default_cluster_tol(double lambda_min, double lambda_max);

/// Decomposes a hermitian operator. Eigenvalues closer than cluster_tol
/// (absolute) are merged into a single degenerate projector. Pass a
/// negative cluster_tol to use the relative default.
/// Throws NotHermitian if the input fails the hermiticity tolerance.
SpectralDecomposition spectral_decompose(const Operator& a,
                                         double cluster_tol = -1.0,
                                         double tol_herm = 1e-10);

}  // namespace pev
