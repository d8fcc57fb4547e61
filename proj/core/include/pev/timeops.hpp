#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pev/operator.hpp"
#include "pev/wavefunction.hpp"

namespace pev {

/// Multiplication operator by the time coordinate x0 (diagonal, hermitian).
Operator time_operator(const SpacetimeGrid& grid);

/// Var(A) Var(B) against the Robertson bound 1/4 |<i[A,B]>|^2. Both
/// numbers are reported; satisfied() applies the documented slack.
struct RobertsonReport {
  double var_a = 0.0;
  double var_b = 0.0;
  double product = 0.0;
  double bound = 0.0;
  double commutator_expectation = 0.0;  // <i[A,B]>, real for hermitian A, B

  bool satisfied(double tol = 1e-10) const { return product >= bound - tol; }
  std::string to_text() const;
};

RobertsonReport robertson_check(const Operator& a, const Operator& b,
                                const GridWavefunction& psi);

/// Var(m^2) Var(x^nu) >= <p^nu>^2 with m^2 = p0^2 - p1^2 on the 1+1D grid.
/// Momentum applications are spectral; no dim x dim matrices are formed.
struct MassUncertaintyReport {
  struct Side {
    double var_m2 = 0.0;
    double var_x = 0.0;
    double lhs = 0.0;        // Var(m^2) Var(x^nu)
    double rhs = 0.0;        // <p^nu>^2
    double slack = 0.0;      // lhs - rhs
  };
  Side nu0;  // nu = 0 (time)
  Side nu1;  // nu = 1 (space)

  bool satisfied(double tol = 1e-9) const {
    return nu0.slack >= -tol && nu1.slack >= -tol;
  }
  std::string to_text() const;
};

MassUncertaintyReport mass_uncertainty_check(const GridWavefunction& psi);

/// Probability weight of psi inside the light cone with temporal vertex
/// vertex_t: nodes with (x0 - vertex_t)^2 - (x1)^2 >= 0.
double causality_probability(const GridWavefunction& psi, double vertex_t);

/// CSV rows t,x,re,im in row-major (time-major) grid order.
void write_wavefunction_csv(std::ostream& os, const GridWavefunction& psi);
GridWavefunction read_wavefunction_csv(std::istream& is,
                                       const SpacetimeGrid& grid);
void save_wavefunction(const std::filesystem::path& path,
                       const GridWavefunction& psi);

}  // namespace pev
