#include "pev/symmetry.hpp"

#include <cmath>
#include <sstream>

#include "pev/generators.hpp"

namespace pev {

void GroupAction::validate(double unitary_tol) const {
  if (elements.empty()) {
    throw Error("group action has no elements");
  }
  bool has_identity = false;
  for (const Operator& s : elements) {
    const double r = s.unitarity_residual();
    if (r > unitary_tol) {
      throw NotUnitary("group element unitarity residual " +
                       std::to_string(r));
    }
    const ComplexMatrix dev =
        s.matrix() - ComplexMatrix::Identity(s.dim(), s.dim());
    if (dev.cwiseAbs().maxCoeff() <= unitary_tol) has_identity = true;
  }
  if (!has_identity) {
    throw Error("group action must contain the identity element");
  }
}

GroupAction GroupAction::z2(const Operator& parity) {
  GroupAction a;
  a.elements = {Operator::identity(parity.dim()), parity};
  a.labels = {"e", "p"};
  return a;
}

Channel transform_channel(const Operator& g, const Channel& ch,
                          double unitary_tol) {
  const double r = g.unitarity_residual();
  if (r > unitary_tol) {
    throw NotUnitary("transform_channel: unitarity residual " +
                     std::to_string(r));
  }
  Channel out;
  out.label = ch.label;
  out.branches.reserve(ch.branches.size());
  const Operator ginv = g.adjoint();  // unitary inverse
  for (const Operator& e : ch.branches) {
    out.branches.push_back(g * e * ginv);
  }
  return out;
}

std::string ProbInvarianceReport::to_text() const {
  std::ostringstream os;
  os << "prob_original = " << prob_original << "\n"
     << "prob_transformed = " << prob_transformed << "\n"
     << "difference = " << difference << "\n"
     << "comm_g_channel = " << comm_g_channel << "\n"
     << "comm_g_state = " << comm_g_state << "\n"
     << "invariance_expected = " << (invariance_expected ? "true" : "false")
     << "\n"
     << "invariant = " << (invariant ? "true" : "false") << "\n";
  return os.str();
}

ProbInvarianceReport probability_invariance_check(const Operator& g,
                                                  const Channel& ch,
                                                  const DensityOperator& rho,
                                                  double tol,
                                                  double comm_tol) {
  ProbInvarianceReport rep;
  rep.prob_original = transition_prob(ch, rho);
  rep.prob_transformed = transition_prob(transform_channel(g, ch), rho);
  rep.difference = std::abs(rep.prob_transformed - rep.prob_original);

  double comm_ch = 0.0;
  for (const Operator& e : ch.branches) {
    comm_ch = std::max(comm_ch, commutator(g, e).max_abs());
  }
  rep.comm_g_channel = comm_ch;
  rep.comm_g_state = commutator(g, rho.op()).max_abs();
  rep.invariance_expected =
      rep.comm_g_channel <= comm_tol || rep.comm_g_state <= comm_tol;
  rep.invariant = rep.difference <= tol;
  return rep;
}

std::string ExpectationReport::to_text() const {
  std::ostringstream os;
  os << "before = " << before << "\n"
     << "after = " << after << "\n"
     << "residual = " << residual << "\n"
     << "unitary_channel = " << (unitary_channel ? "true" : "false") << "\n"
     << "comm_residual = " << comm_residual << "\n"
     << "conservation_expected = "
     << (conservation_expected ? "true" : "false") << "\n"
     << "conserved = " << (conserved ? "true" : "false") << "\n";
  return os.str();
}

ExpectationReport expectation_conservation_check(const Operator& a,
                                                 const Channel& ch,
                                                 const DensityOperator& rho,
                                                 double tol) {
  if (!a.is_hermitian()) {
    throw NotHermitian("expectation_conservation_check: observable residual " +
                       std::to_string(a.hermiticity_residual()));
  }
  ExpectationReport rep;
  rep.before = expectation(a, rho);

  Operator mapped = apply_channel(ch, rho);
  const double denom = mapped.trace().real();
  if (denom <= 1e-12) {
    throw ZeroProbabilityBranch(
        "expectation_conservation_check: channel annihilates the state");
  }
  rep.after = (a.matrix() * mapped.matrix()).trace().real() / denom;
  rep.residual = std::abs(rep.after - rep.before);

  rep.unitary_channel =
      ch.branches.size() == 1 && ch.branches[0].is_unitary(1e-10);
  double comm = 0.0;
  for (const Operator& e : ch.branches) {
    comm = std::max(comm, commutator(a, e).max_abs());
  }
  rep.comm_residual = comm;
  rep.conservation_expected = rep.unitary_channel && comm <= 1e-10;
  rep.conserved = rep.residual <= tol;
  return rep;
}

std::string CasimirRunReport::to_text() const {
  std::ostringstream os;
  os << "w_invariance_residual = " << w_invariance_residual << "\n"
     << "c_commute_residual = " << c_commute_residual << "\n"
     << "first_value = " << first_value << "\n"
     << "max_drift = " << max_drift << "\n"
     << "steps = " << casimir_values.size() << "\n";
  return os.str();
}

CasimirRunReport casimir_conservation_run(const GroupAction& action,
                                          const Operator& w, const Operator& c,
                                          const DensityOperator& rho0,
                                          int n_steps, std::uint64_t seed,
                                          double cluster_tol) {
  action.validate();
  if (n_steps < 1) {
    throw Error("casimir run needs at least one step");
  }

  CasimirRunReport rep;
  for (const Operator& g : action.elements) {
    const Operator ginv = g.adjoint();
    rep.w_invariance_residual =
        std::max(rep.w_invariance_residual, (g * w * ginv - w).max_abs());
    rep.c_commute_residual =
        std::max(rep.c_commute_residual, commutator(c, g).max_abs());
  }

  ChannelFamily family = channels_from_generator(w, cluster_tol);
  std::vector<ChannelFamily> families(static_cast<std::size_t>(n_steps),
                                      family);
  for (int i = 0; i < n_steps; ++i) families[i].step = i + 1;

  rep.path = sample_path(families, rho0, seed);
  rep.casimir_values.reserve(rep.path.steps.size());
  for (const PathStep& s : rep.path.steps) {
    rep.casimir_values.push_back(expectation(c, s.state));
  }
  rep.first_value = rep.casimir_values.front();
  for (double v : rep.casimir_values) {
    rep.max_drift = std::max(rep.max_drift, std::abs(v - rep.first_value));
  }
  return rep;
}

}  // namespace pev
