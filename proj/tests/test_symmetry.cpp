#include <doctest.h>

#include <cmath>

#include "pev/generators.hpp"
#include "pev/spectral.hpp"
#include "pev/symmetry.hpp"
#include "test_support.hpp"

using namespace pev;
using namespace pev::testing;

namespace {

// 4-level system with two parity sectors. W mixes levels inside each
// sector and has distinct eigenvalues across sectors.
struct Z2System {
  Operator parity;
  Operator w;
  Operator casimir;

  Z2System() : parity(build_parity()), w(build_w()), casimir(parity) {}

  static Operator build_parity() {
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(0, 0) = 1;
    p(1, 1) = 1;
    p(2, 2) = -1;
    p(3, 3) = -1;
    return Operator(std::move(p));
  }

  static Operator build_w() {
    ComplexMatrix w = ComplexMatrix::Zero(4, 4);
    // Even sector block.
    w(0, 0) = 1.0;
    w(1, 1) = 1.4;
    w(0, 1) = 0.2;
    w(1, 0) = 0.2;
    // Odd sector block.
    w(2, 2) = 3.0;
    w(3, 3) = 3.5;
    w(2, 3) = Complex(0.0, 0.1);
    w(3, 2) = Complex(0.0, -0.1);
    return Operator(std::move(w));
  }
};

}  // namespace

TEST_CASE("identity transform leaves the channel alone") {
  Channel ch{"p", {Operator::projector(ket0())}};
  Channel out = transform_channel(Operator::identity(2), ch);
  CHECK((out.branches[0] - ch.branches[0]).max_abs() <= 1e-15);
}

TEST_CASE("pauli x conjugation flips the basis projector") {
  Channel ch{"p", {Operator::projector(ket0())}};
  Channel out = transform_channel(pauli_x(), ch);
  CHECK((out.branches[0] - Operator::projector(ket1())).max_abs() <= 1e-14);
}

TEST_CASE("transforming by g then g inverse is the identity") {
  auto rng = make_rng(71);
  Operator g = random_unitary(rng, 4);
  Channel ch{"k", {random_hermitian(rng, 4)}};
  Channel round = transform_channel(g.adjoint(), transform_channel(g, ch));
  CHECK((round.branches[0] - ch.branches[0]).max_abs() <= 1e-12);
}

TEST_CASE("transform_channel rejects non-unitary maps") {
  Channel ch{"p", {Operator::projector(ket0())}};
  CHECK_THROWS_AS(transform_channel(Operator::identity(2) * 2.0, ch),
                  NotUnitary);
}

TEST_CASE("probability invariance holds for commuting pairs") {
  // g is a phase in the eigenbasis of E, so [g, E] = 0.
  ComplexMatrix gm = ComplexMatrix::Zero(2, 2);
  gm(0, 0) = std::polar(1.0, 0.3);
  gm(1, 1) = std::polar(1.0, -1.1);
  Operator g{ComplexMatrix(gm)};
  Channel ch{"p", {Operator::projector(ket0())}};
  auto rng = make_rng(73);
  DensityOperator rho = random_density(rng, 2);
  ProbInvarianceReport rep = probability_invariance_check(g, ch, rho);
  CHECK(rep.comm_g_channel <= 1e-12);
  CHECK(rep.invariance_expected);
  CHECK(rep.invariant);
}

TEST_CASE("probability invariance holds when the state is maximally mixed") {
  auto rng = make_rng(79);
  Operator g = random_unitary(rng, 3);
  Channel ch{"k", {random_hermitian(rng, 3)}};
  DensityOperator rho = DensityOperator::maximally_mixed(3);
  ProbInvarianceReport rep = probability_invariance_check(g, ch, rho);
  CHECK(rep.comm_g_state <= 1e-12);
  CHECK(rep.invariance_expected);
  CHECK(rep.invariant);
}

TEST_CASE("a noncommuting triple is correctly reported as non-invariant") {
  // Hadamard-like rotation against a basis projector on a basis state.
  ComplexMatrix hm(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  hm << s, s, s, -s;
  Operator g{ComplexMatrix(hm)};
  Channel ch{"p", {Operator::projector(ket0())}};
  DensityOperator rho = DensityOperator::pure(ket0());
  ProbInvarianceReport rep = probability_invariance_check(g, ch, rho);
  CHECK(rep.prob_original == doctest::Approx(1.0));
  CHECK(rep.prob_transformed == doctest::Approx(0.5));
  CHECK_FALSE(rep.invariance_expected);
  CHECK_FALSE(rep.invariant);
}

TEST_CASE("the unit observable is conserved by every channel") {
  auto rng = make_rng(83);
  ChannelFamily f = random_conserving_family(rng, 4, 3);
  DensityOperator rho = random_density(rng, 4);
  for (const Channel& ch : f.channels) {
    ExpectationReport rep =
        expectation_conservation_check(Operator::identity(4), ch, rho);
    CHECK(rep.before == doctest::Approx(1.0));
    CHECK(rep.after == doctest::Approx(1.0));
    CHECK(rep.conserved);
  }
}

TEST_CASE("a unitary built from the observable conserves it") {
  auto rng = make_rng(89);
  Operator a = random_hermitian(rng, 4);
  // U = exp(i theta A) through the spectral decomposition of A.
  SpectralDecomposition sd = spectral_decompose(a);
  ComplexMatrix um = ComplexMatrix::Zero(4, 4);
  const double theta = 0.6;
  for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
    um += std::polar(1.0, theta * sd.eigenvalues[k]) *
          sd.projectors[k].matrix();
  }
  Operator u{ComplexMatrix(um)};
  REQUIRE(u.is_unitary(1e-10));

  DensityOperator rho = random_density(rng, 4);
  ExpectationReport rep =
      expectation_conservation_check(a, Channel{"u", {u}}, rho);
  CHECK(rep.unitary_channel);
  CHECK(rep.comm_residual <= 1e-10);
  CHECK(rep.conservation_expected);
  CHECK(rep.residual <= 1e-9);
}

TEST_CASE("projection onto plus flips the z expectation") {
  Channel plus{"+", {Operator::projector(ket_plus())}};
  DensityOperator rho = DensityOperator::pure(ket0());
  ExpectationReport rep =
      expectation_conservation_check(pauli_z(), plus, rho);
  CHECK(rep.before == doctest::Approx(1.0));
  CHECK(rep.after == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(rep.conserved);
  CHECK_FALSE(rep.conservation_expected);
}

TEST_CASE("casimir expectation freezes after the first step") {
  Z2System sys;
  GroupAction action = GroupAction::z2(sys.parity);
  DensityOperator rho0 = DensityOperator::maximally_mixed(4);

  CasimirRunReport rep =
      casimir_conservation_run(action, sys.w, sys.casimir, rho0, 6, 2024);
  CHECK(rep.w_invariance_residual <= 1e-12);
  CHECK(rep.c_commute_residual <= 1e-12);
  REQUIRE(rep.casimir_values.size() == 6);
  CHECK(rep.frozen(1e-8));
  // The frozen value is a parity eigenvalue.
  CHECK(std::abs(std::abs(rep.first_value) - 1.0) <= 1e-9);
}

TEST_CASE("unit casimir is trivially conserved at one") {
  Z2System sys;
  GroupAction action = GroupAction::z2(sys.parity);
  DensityOperator rho0 = DensityOperator::maximally_mixed(4);
  CasimirRunReport rep = casimir_conservation_run(
      action, sys.w, Operator::identity(4), rho0, 4, 7);
  CHECK(rep.frozen(1e-12));
  CHECK(rep.first_value == doctest::Approx(1.0));
}

TEST_CASE("a sector eigenstate makes the first draw deterministic") {
  Z2System sys;
  GroupAction action = GroupAction::z2(sys.parity);
  // Even-sector eigenvector of W.
  SpectralDecomposition sd = spectral_decompose(sys.w);
  // Pick the projector whose range lies in the even sector.
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0;
  DensityOperator rho0 = DensityOperator::pure(v);

  // v is a combination of the two even eigenvectors; project onto one.
  Channel first_even{"0", {sd.projectors[0]}};
  DensityOperator rho1 = luders_update(first_even, rho0);
  CasimirRunReport rep = casimir_conservation_run(
      action, sys.w, sys.casimir, rho1, 5, 999);
  CHECK(rep.frozen(1e-10));
  CHECK(rep.first_value == doctest::Approx(1.0));
  for (const PathStep& s : rep.path.steps) {
    CHECK(s.pev == doctest::Approx(1.0));
  }
}

TEST_CASE("transform_channel preserves family validation verdicts") {
  auto rng = make_rng(97);
  ChannelFamily f = channels_from_generator(random_hermitian(rng, 5));
  REQUIRE(validate_family(f).pass(1e-9));
  Operator g = random_unitary(rng, 5);
  ChannelFamily tf = f;
  for (Channel& ch : tf.channels) ch = transform_channel(g, ch);
  CHECK(validate_family(tf).pass(1e-9));
}

TEST_CASE("weight sums are invariant under a simultaneous transform") {
  auto rng = make_rng(101);
  ChannelFamily f = random_conserving_family(rng, 4, 3);
  DensityOperator rho = random_density(rng, 4);
  Operator g = random_unitary(rng, 4);

  double before = 0.0, after = 0.0;
  DensityOperator rho_t(g * rho.op() * g.adjoint());
  for (const Channel& ch : f.channels) {
    before += transition_prob(ch, rho);
    after += transition_prob(transform_channel(g, ch), rho_t);
  }
  CHECK(std::abs(after - before) <= 1e-9);
}

TEST_CASE("group actions must contain the identity") {
  GroupAction bad;
  bad.elements = {pauli_x()};
  CHECK_THROWS_AS(bad.validate(), Error);
}
