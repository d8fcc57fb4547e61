#pragma once

#include <string>
#include <vector>

#include "pev/operator.hpp"

namespace pev {

/// One evolution alternative: the branch operators E(tau; nu, alpha) for a
/// fixed quantum-number label nu. Applying the channel to a state gives the
/// unnormalized sum over alpha of E rho E†.
struct Channel {
  std::string label;               // nu
  std::vector<Operator> branches;  // indexed by alpha

  int dim() const;
};

enum class FamilyKind { OrthogonalResolution, Unitary, General };

const char* to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

/// The set of channels available at one evolution step.
struct ChannelFamily {
  int step = 0;  // tau index
  FamilyKind kind = FamilyKind::General;
  /// Asserts sum over (nu, alpha) of E†E = 1 for kind General. Implied for
  /// OrthogonalResolution and Unitary.
  bool probability_conserving = false;
  std::vector<Channel> channels;

  int dim() const;

  /// Orthogonal resolution of unity from a projector list, one channel per
  /// projector.
  static ChannelFamily orthogonal_resolution(std::vector<Operator> projectors,
                                             int step = 0);
  static ChannelFamily unitary(Operator u, int step = 0);
};

/// Sum over alpha of E rho E†. Hermitian and positive for any valid input.
Operator apply_channel(const Channel& ch, const DensityOperator& rho);

/// Tr of apply_channel; the chooser weight for this channel.
double transition_prob(const Channel& ch, const DensityOperator& rho);

/// Generalized Lüders update: apply_channel normalized by its trace.
/// Throws ZeroProbabilityBranch when the trace is at or below zero_prob_tol.
DensityOperator luders_update(const Channel& ch, const DensityOperator& rho,
                              double zero_prob_tol = 1e-12);

/// (sum_m U_m rho U_m†) / trace. Throws NotUnitary if any U fails the
/// unitarity tolerance.
DensityOperator mixed_unitary_update(const std::vector<Operator>& us,
                                     const DensityOperator& rho,
                                     double unitary_tol = 1e-10);

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

/// Kind-specific invariant residuals for a channel family.
struct FamilyDiagnostics {
  FamilyKind kind = FamilyKind::General;
  std::vector<NamedResidual> residuals;
  /// Reported values that are not residuals (e.g. total weight trace).
  std::vector<NamedResidual> info;
  /// Structural failures (wrong channel/branch counts) independent of any
  /// numeric tolerance.
  std::vector<std::string> structural_errors;

  double max_residual() const;
  bool pass(double tol) const;
  std::string to_text() const;
};

FamilyDiagnostics validate_family(const ChannelFamily& family);

}  // namespace pev
