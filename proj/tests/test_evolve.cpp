#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pev/evolve.hpp"
#include "pev/rng.hpp"
#include "test_support.hpp"

using namespace pev;
using namespace pev::testing;

namespace {

ChannelFamily basis_family() {
  return ChannelFamily::orthogonal_resolution(
      {Operator::projector(ket0()), Operator::projector(ket1())}, 1);
}

DensityOperator rho_37() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.3;
  m(1, 1) = 0.7;
  return DensityOperator(Operator(std::move(m)));
}

}  // namespace

TEST_CASE("a single unitary family gives one certain step") {
  auto rng = make_rng(3);
  Operator u = random_unitary(rng, 3);
  DensityOperator rho = random_density(rng, 3);
  PathRecord path =
      sample_path({ChannelFamily::unitary(u, 1)}, rho, 99);
  REQUIRE(path.steps.size() == 1);
  CHECK(path.steps[0].pev == doctest::Approx(1.0));
  Operator expected = u * rho.op() * u.adjoint();
  CHECK((path.steps[0].state.op() - expected).max_abs() <= 1e-12);
}

TEST_CASE("same seed reproduces the path bit for bit") {
  ChannelFamily f = basis_family();
  std::vector<ChannelFamily> families(6, f);
  for (int i = 0; i < 6; ++i) families[i].step = i + 1;
  PathRecord a = sample_path(families, rho_37(), 1234);
  PathRecord b = sample_path(families, rho_37(), 1234);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].nu == b.steps[i].nu);
    CHECK(a.steps[i].pev == b.steps[i].pev);  // exact equality
    CHECK((a.steps[i].state.op() - b.steps[i].state.op()).max_abs() == 0.0);
  }
  std::ostringstream ca, cb;
  write_path_csv(ca, a);
  write_path_csv(cb, b);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("different substreams decorrelate") {
  RandomStream root(7);
  RandomStream s0 = root.substream(0);
  RandomStream s1 = root.substream(1);
  CHECK(s0.seed() != s1.seed());
  RandomStream s0b = root.substream(0);
  CHECK(s0.seed() == s0b.seed());
}

TEST_CASE("empirical frequencies match the born weights within 3 sigma") {
  ChannelFamily f = basis_family();
  const std::int64_t n = 100000;
  BranchFrequencies freq = aggregate_paths({f}, rho_37(), 42, n);
  REQUIRE(freq.steps.size() == 1);
  REQUIRE(freq.steps[0].counts.size() == 2);
  const double f0 = double(freq.steps[0].counts[0]) / n;
  const double sigma = std::sqrt(0.3 * 0.7 / n);
  CHECK(std::abs(f0 - 0.3) <= 3.0 * sigma);

  // Chi-square with one degree of freedom at the 0.999 level.
  const double z = (f0 - 0.3) / sigma;
  CHECK(z * z <= 10.828);
}

TEST_CASE("all-zero steps raise AllBranchesZero") {
  // A family whose only channel annihilates the state.
  ChannelFamily f;
  f.kind = FamilyKind::General;
  f.channels.push_back(Channel{"dead", {Operator::projector(ket1())}});
  f.step = 1;
  DensityOperator rho0 = DensityOperator::pure(ket0());
  CHECK_THROWS_AS(sample_path({f}, rho0, 5), AllBranchesZero);
}

TEST_CASE("chooser weights normalize across the family") {
  auto rng = make_rng(67);
  ChannelFamily f = random_conserving_family(rng, 6, 4);
  DensityOperator rho = random_density(rng, 6);
  std::vector<double> w = chooser_weights(f, rho);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("recorded pev weights sum to one over the alternatives") {
  ChannelFamily f = basis_family();
  PathRecord path = sample_path({f}, rho_37(), 11);
  // With two channels of weight 0.3 / 0.7 the recorded pev is one of them.
  const double p = path.steps[0].pev;
  CHECK((std::abs(p - 0.3) <= 1e-12 || std::abs(p - 0.7) <= 1e-12));
}

TEST_CASE("uniform01 has the documented mapping") {
  RandomStream s(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
