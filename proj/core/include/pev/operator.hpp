#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "pev/errors.hpp"

namespace pev {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dimension cap applied when operators are read from external files.
/// In-process construction (grid tensor products in particular) is not
/// capped; the limit guards the deserialization boundary only.
inline constexpr int kDefaultFileDimCap = 64;

/// Dense complex square matrix with validated shape and finite entries.
/// Immutable after construction; all operations return new values.
class Operator {
 public:
  Operator() = default;

  /// Throws DimensionMismatch if m is not square, Error if any entry is
  /// non-finite.
  explicit Operator(ComplexMatrix m);

  static Operator identity(int dim);
  static Operator zero(int dim);
  /// Rank-1 projector |v><v| / <v|v>.
  static Operator projector(const ComplexVector& v);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }
  Complex operator()(int i, int j) const { return mat_(i, j); }

  Operator adjoint() const { return Operator(mat_.adjoint().eval()); }
  Complex trace() const { return mat_.trace(); }

  /// max_ij |a_ij|
  double max_abs() const;

  double hermiticity_residual() const;  // ||A - A†||_max
  double unitarity_residual() const;    // ||A†A - 1||_max

  bool is_hermitian(double tol = 1e-10) const {
    return hermiticity_residual() <= tol;
  }
  bool is_unitary(double tol = 1e-10) const {
    return unitarity_residual() <= tol;
  }

  Operator operator+(const Operator& b) const;
  Operator operator-(const Operator& b) const;
  Operator operator*(const Operator& b) const;
  Operator operator*(Complex s) const { return Operator(ComplexMatrix(mat_ * s)); }
  Operator operator*(double s) const { return Operator(ComplexMatrix(mat_ * s)); }

 private:
  ComplexMatrix mat_;
};

inline Operator operator*(Complex s, const Operator& a) { return a * s; }
inline Operator operator*(double s, const Operator& a) { return a * s; }

Operator adjoint(const Operator& a);
Complex trace(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Kronecker product; index convention (i_a * dim_b + i_b).
Operator tensor(const Operator& a, const Operator& b);

struct DensityTolerances {
  double herm = 1e-10;
  double pos = 1e-10;
  double trace = 1e-10;
};

/// Per-invariant residuals for the density-operator check.
struct DensityDiagnostics {
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;
  bool hermitian_ok = false;
  bool positive_ok = false;
  bool trace_ok = false;

  bool ok() const { return hermitian_ok && positive_ok && trace_ok; }
  std::string to_text() const;
};

DensityDiagnostics check_density(const Operator& op,
                                 const DensityTolerances& tols = {});

/// True iff op is hermitian, positive and unit-trace within tols.
bool is_valid_density(const Operator& op, const DensityTolerances& tols = {},
                      DensityDiagnostics* diag = nullptr);

/// Positive unit-trace operator. Construction validates the three
/// invariants and throws InvalidDensity on failure.
class DensityOperator {
 public:
  explicit DensityOperator(Operator op, const DensityTolerances& tols = {});

  static DensityOperator pure(const ComplexVector& state);
  static DensityOperator maximally_mixed(int dim);

  int dim() const { return op_.dim(); }
  const Operator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  Operator op_;
};

/// Tr(rho^2), equals 1 for pure states.
double purity(const DensityOperator& rho);

/// Von Neumann entropy -sum(l ln l) over the spectrum, natural log.
double von_neumann_entropy(const DensityOperator& rho);

double expectation(const Operator& a, const DensityOperator& rho);

}  // namespace pev
