#include "pev/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace pev {

Operator SpectralDecomposition::reconstruct() const {
  if (projectors.empty()) {
    throw Error("empty spectral decomposition");
  }
  const int d = projectors.front().dim();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    acc += eigenvalues[k] * projectors[k].matrix();
  }
  return Operator(std::move(acc));
}

double SpectralDecomposition::projector_residual() const {
  const int d = projectors.front().dim();
  double worst = 0.0;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& pi = projectors[i].matrix();
    worst = std::max(worst, projectors[i].hermiticity_residual());
    sum += pi;
    for (std::size_t j = 0; j < projectors.size(); ++j) {
      const ComplexMatrix& pj = projectors[j].matrix();
      ComplexMatrix prod = pi * pj;
      if (i == j) prod -= pi;
      worst = std::max(worst, prod.cwiseAbs().maxCoeff());
    }
  }
  sum -= ComplexMatrix::Identity(d, d);
  return std::max(worst, sum.cwiseAbs().maxCoeff());
}

double default_cluster_tol(double lambda_min, double lambda_max) {
  const double range = lambda_max - lambda_min;
  return 1e-9 * std::max(range, 1.0);
}

SpectralDecomposition spectral_decompose(const Operator& a, double cluster_tol,
                                         double tol_herm) {
  const double herm = a.hermiticity_residual();
  if (herm > tol_herm) {
    throw NotHermitian("spectral_decompose: hermiticity residual " +
                       std::to_string(herm));
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition failed");
  }
  const auto& vals = es.eigenvalues();   // ascending
  const auto& vecs = es.eigenvectors();
  const int d = a.dim();

  if (cluster_tol < 0.0) {
    cluster_tol = default_cluster_tol(vals(0), vals(d - 1));
  }

  SpectralDecomposition out;
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && vals(end) - vals(end - 1) <= cluster_tol) ++end;

    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    double mean = 0.0;
    for (int k = start; k < end; ++k) {
      p += vecs.col(k) * vecs.col(k).adjoint();
      mean += vals(k);
    }
    mean /= (end - start);
    out.eigenvalues.push_back(mean);
    out.projectors.emplace_back(std::move(p));
    start = end;
  }
  return out;
}

}  // namespace pev
