#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pev/channel.hpp"
#include "pev/evolve.hpp"
#include "pev/operator.hpp"

namespace pev {

/// Finite group (or finite sample of a compact group) acting by unitaries.
/// Closure over the sampled set is not required; the identity must be
/// present.
struct GroupAction {
  std::vector<Operator> elements;
  std::vector<std::string> labels;

  /// Throws NotUnitary / Error when an element fails the tolerance or no
  /// identity is present.
  void validate(double unitary_tol = 1e-10) const;

  static GroupAction z2(const Operator& parity);
};

/// Conjugates every branch: E -> g E g^{-1}. Throws NotUnitary.
Channel transform_channel(const Operator& g, const Channel& ch,
                          double unitary_tol = 1e-10);

/// Compares Tr(gEg^{-1} rho gE†g^{-1}) with Tr(E rho E†) and reports the
/// commutator residuals that decide whether invariance is expected.
struct ProbInvarianceReport {
  double prob_original = 0.0;
  double prob_transformed = 0.0;
  double difference = 0.0;            // |transformed - original|
  double comm_g_channel = 0.0;        // max over branches ||[g, E]||_max
  double comm_g_state = 0.0;          // ||[g, rho]||_max
  bool invariance_expected = false;   // either commutator vanishes
  bool invariant = false;             // difference within tolerance

  std::string to_text() const;
};

ProbInvarianceReport probability_invariance_check(const Operator& g,
                                                  const Channel& ch,
                                                  const DensityOperator& rho,
                                                  double tol = 1e-9,
                                                  double comm_tol = 1e-10);

/// Both sides of the expectation-value conservation identity
/// Tr(A rho) = Tr(A E rho E†) / Tr(E rho E†).
struct ExpectationReport {
  double before = 0.0;
  double after = 0.0;
  double residual = 0.0;              // |after - before|
  bool unitary_channel = false;
  double comm_residual = 0.0;         // ||[A, E]||_max over branches
  bool conservation_expected = false; // unitary and commuting
  bool conserved = false;

  std::string to_text() const;
};

/// Throws ZeroProbabilityBranch when the channel annihilates the state.
ExpectationReport expectation_conservation_check(const Operator& a,
                                                 const Channel& ch,
                                                 const DensityOperator& rho,
                                                 double tol = 1e-9);

/// Samples a path through the eigenchannels of the invariant generator W
/// and tracks Tr(C rho) along it. With [C, S(g)] = 0 and gWg^{-1} = W the
/// Casimir expectation freezes at the step-1 sector eigenvalue.
struct CasimirRunReport {
  double w_invariance_residual = 0.0;  // max over g of ||gWg^{-1} - W||_max
  double c_commute_residual = 0.0;     // max over g of ||[C, S(g)]||_max
  std::vector<double> casimir_values;  // Tr(C rho(tau_n)), n >= 1
  double first_value = 0.0;
  double max_drift = 0.0;              // max |value_n - first_value|, n >= 1
  PathRecord path;

  bool frozen(double tol = 1e-8) const { return max_drift <= tol; }
  std::string to_text() const;
};

CasimirRunReport casimir_conservation_run(const GroupAction& action,
                                          const Operator& w, const Operator& c,
                                          const DensityOperator& rho0,
                                          int n_steps, std::uint64_t seed,
                                          double cluster_tol = -1.0);

}  // namespace pev
