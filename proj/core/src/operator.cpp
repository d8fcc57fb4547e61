#include "pev/operator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace pev {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

Operator::Operator(ComplexMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) {
    throw DimensionMismatch("operator matrix must be square, got " +
                            std::to_string(mat_.rows()) + "x" +
                            std::to_string(mat_.cols()));
  }
  if (!mat_.allFinite()) {
    throw Error("operator entries must be finite");
  }
}

Operator Operator::identity(int dim) {
  return Operator(ComplexMatrix(ComplexMatrix::Identity(dim, dim)));
}

Operator Operator::zero(int dim) {
  return Operator(ComplexMatrix(ComplexMatrix::Zero(dim, dim)));
}

Operator Operator::projector(const ComplexVector& v) {
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) {
    throw Error("cannot build a projector from the zero vector");
  }
  return Operator(ComplexMatrix((v * v.adjoint()) / n2));
}

double Operator::max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

double Operator::hermiticity_residual() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_residual() const {
  const auto d = dim();
  return (mat_.adjoint() * mat_ - ComplexMatrix::Identity(d, d))
      .cwiseAbs()
      .maxCoeff();
}

Operator Operator::operator+(const Operator& b) const {
  require_same_dim(*this, b, "operator+");
  return Operator(ComplexMatrix(mat_ + b.mat_));
}

Operator Operator::operator-(const Operator& b) const {
  require_same_dim(*this, b, "operator-");
  return Operator(ComplexMatrix(mat_ - b.mat_));
}

Operator Operator::operator*(const Operator& b) const {
  require_same_dim(*this, b, "operator*");
  return Operator(ComplexMatrix(mat_ * b.mat_));
}

Operator adjoint(const Operator& a) { return a.adjoint(); }

Complex trace(const Operator& a) { return a.trace(); }

Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

DensityDiagnostics check_density(const Operator& op,
                                 const DensityTolerances& tols) {
  DensityDiagnostics d;
  d.hermiticity_residual = op.hermiticity_residual();
  d.hermitian_ok = d.hermiticity_residual <= tols.herm;
  d.trace_deviation = std::abs(op.trace() - Complex(1.0, 0.0));
  d.trace_ok = d.trace_deviation <= tols.trace;

  // Eigenvalues of the hermitized matrix; for a nearly hermitian input this
  // is the spectrum up to the hermiticity residual.
  ComplexMatrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h,
                                                  Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.positive_ok = d.min_eigenvalue >= -tols.pos;
  return d;
}

std::string DensityDiagnostics::to_text() const {
  std::ostringstream os;
  os << "hermiticity_residual = " << hermiticity_residual
     << (hermitian_ok ? " [ok]" : " [FAIL]") << "\n"
     << "min_eigenvalue = " << min_eigenvalue
     << (positive_ok ? " [ok]" : " [FAIL]") << "\n"
     << "trace_deviation = " << trace_deviation
     << (trace_ok ? " [ok]" : " [FAIL]") << "\n";
  return os.str();
}

bool is_valid_density(const Operator& op, const DensityTolerances& tols,
                      DensityDiagnostics* diag) {
  DensityDiagnostics d = check_density(op, tols);
  if (diag) *diag = d;
  return d.ok();
}

DensityOperator::DensityOperator(Operator op, const DensityTolerances& tols)
    : op_(std::move(op)) {
  DensityDiagnostics d = check_density(op_, tols);
  if (!d.ok()) {
    throw InvalidDensity("not a density operator:\n" + d.to_text());
  }
}

DensityOperator DensityOperator::pure(const ComplexVector& state) {
  return DensityOperator(Operator::projector(state));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Operator::identity(dim) * (1.0 / dim));
}

double purity(const DensityOperator& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(),
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double expectation(const Operator& a, const DensityOperator& rho) {
  if (a.dim() != rho.dim()) {
    throw DimensionMismatch("expectation: operator dim " +
                            std::to_string(a.dim()) + " vs state dim " +
                            std::to_string(rho.dim()));
  }
  return (a.matrix() * rho.matrix()).trace().real();
}

}  // namespace pev
