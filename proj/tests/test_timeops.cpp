#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pev/generators.hpp"
#include "pev/timeops.hpp"
#include "test_support.hpp"

using namespace pev;
using namespace pev::testing;

namespace {

SpacetimeGrid centered_line(int n_t, double dt) {
  return SpacetimeGrid(n_t, 1, dt, 1.0, -0.5 * n_t * dt, 0.0);
}

}  // namespace

TEST_CASE("time operator expectation on a point mass") {
  SpacetimeGrid grid(8, 4, 0.5, 1.0);
  GridWavefunction psi = GridWavefunction::point(grid, 2.0, 0.0);
  Operator t = time_operator(grid);
  CHECK(expectation(t, psi) == doctest::Approx(2.0));
}

TEST_CASE("symmetric packets have zero mean time") {
  SpacetimeGrid grid = centered_line(64, 0.5);
  // Center on the node lattice so the profile is exactly symmetric.
  GridWavefunction psi =
      GridWavefunction::gaussian(grid, grid.t(32), 0.0, 3.0, 1.0);
  Operator t = time_operator(grid);
  CHECK(std::abs(expectation(t, psi) - grid.t(32)) <= 1e-10);
}

TEST_CASE("gaussian packet moments match the analytic values") {
  SpacetimeGrid grid = centered_line(256, 0.25);
  const double t_bar = 1.5, sigma = 2.5;  // sigma = 10 dt
  GridWavefunction psi =
      GridWavefunction::gaussian(grid, t_bar, 0.0, sigma, 1.0);
  Operator t = time_operator(grid);
  CHECK(std::abs(expectation(t, psi) - t_bar) <= 1e-3 * sigma);
  CHECK(std::abs(variance(t, psi) - sigma * sigma) <= 1e-3 * sigma * sigma);
}

TEST_CASE("variance vanishes on eigenvectors") {
  SpacetimeGrid grid(16, 1, 0.5, 1.0);
  GridWavefunction psi = GridWavefunction::point(grid, grid.t(5), 0.0);
  Operator t = time_operator(grid);
  CHECK(variance(t, psi) <= 1e-12);
  CHECK(variance(t, psi) >= -1e-12);
}

TEST_CASE("equal superposition of plus minus one eigenvalues has variance 1") {
  // Diagonal observable with eigenvalues +-1 on a two-node grid.
  SpacetimeGrid grid(2, 1, 1.0, 1.0, -0.5, 0.0);
  ComplexVector amp(2);
  amp << 1.0, 1.0;
  GridWavefunction psi(grid, std::move(amp));
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  Operator a{ComplexMatrix(m)};
  CHECK(variance(a, psi) == doctest::Approx(1.0));
}

TEST_CASE("variance rejects non-hermitian observables") {
  SpacetimeGrid grid(2, 1, 1.0, 1.0);
  ComplexVector amp(2);
  amp << 1.0, 0.5;
  GridWavefunction psi(grid, std::move(amp));
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(variance(Operator(std::move(m)), psi), NotHermitian);
}

TEST_CASE("robertson bound is trivial for a self pair") {
  SpacetimeGrid grid = centered_line(64, 0.5);
  GridWavefunction psi = GridWavefunction::gaussian(grid, 0.0, 0.0, 3.0, 1.0);
  Operator t = time_operator(grid);
  RobertsonReport rep = robertson_check(t, t, psi);
  CHECK(rep.bound <= 1e-12);
  CHECK(rep.satisfied());
}

TEST_CASE("gaussian packets saturate the time-energy bound") {
  SpacetimeGrid grid = centered_line(256, 1.0);
  Operator t = time_operator(grid);
  Operator p0 = p_mu_operator(grid, 0);
  GridWavefunction psi = GridWavefunction::gaussian(grid, 0.0, 0.0, 10.0, 1.0);
  RobertsonReport rep = robertson_check(t, p0, psi);
  CHECK(rep.bound == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(rep.product >= rep.bound - 1e-10);
  CHECK(rep.product / rep.bound == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("squeezing trades the variances at a fixed product") {
  SpacetimeGrid grid = centered_line(256, 1.0);
  Operator t = time_operator(grid);
  Operator p0 = p_mu_operator(grid, 0);
  GridWavefunction wide = GridWavefunction::gaussian(grid, 0.0, 0.0, 16.0, 1.0);
  GridWavefunction narrow = GridWavefunction::gaussian(grid, 0.0, 0.0, 8.0, 1.0);
  RobertsonReport w = robertson_check(t, p0, wide);
  RobertsonReport n = robertson_check(t, p0, narrow);
  CHECK(n.var_a == doctest::Approx(w.var_a / 4.0).epsilon(1e-3));
  CHECK(n.var_b == doctest::Approx(w.var_b * 4.0).epsilon(1e-3));
  CHECK(n.product == doctest::Approx(w.product).epsilon(0.02));
}

TEST_CASE("robertson holds on many random localized packets") {
  SpacetimeGrid grid = centered_line(64, 1.0);
  Operator t = time_operator(grid);
  Operator p0 = p_mu_operator(grid, 0);
  const std::vector<double> ks = grid.momenta_t();
  auto rng = make_rng(103);
  std::uniform_real_distribution<double> width(2.0, 6.0);
  std::uniform_real_distribution<double> center(-8.0, 8.0);
  std::uniform_int_distribution<int> carrier(0, 63);
  for (int trial = 0; trial < 1000; ++trial) {
    GridWavefunction psi = GridWavefunction::gaussian(
        grid, center(rng), 0.0, width(rng), 1.0, ks[carrier(rng)], 0.0);
    RobertsonReport rep = robertson_check(t, p0, psi);
    CHECK(rep.satisfied(1e-10));
  }
}

TEST_CASE("time statistics ignore global phases") {
  SpacetimeGrid grid = centered_line(64, 0.5);
  GridWavefunction psi = GridWavefunction::gaussian(grid, 1.0, 0.0, 3.0, 1.0);
  ComplexVector rotated =
      psi.amplitudes() * std::polar(1.0, 1.234);
  GridWavefunction psi2(grid, std::move(rotated));
  Operator t = time_operator(grid);
  CHECK(expectation(t, psi) == doctest::Approx(expectation(t, psi2)));
  CHECK(variance(t, psi) == doctest::Approx(variance(t, psi2)));
}

TEST_CASE("mass uncertainty relation holds on gaussian packets") {
  SpacetimeGrid grid(32, 32, 1.0, 1.0, -16.0, -16.0);
  const std::vector<double> kt = grid.momenta_t();
  const std::vector<double> kx = grid.momenta_x();
  GridWavefunction psi = GridWavefunction::gaussian(grid, 0.0, 0.0, 4.0, 4.0,
                                                    kt[4], kx[4]);
  MassUncertaintyReport rep = mass_uncertainty_check(psi);
  CHECK(rep.satisfied(1e-9));
  CHECK(rep.nu0.rhs > 0.0);
  CHECK(rep.nu1.rhs > 0.0);
}

TEST_CASE("zero momentum expectation trivializes one side") {
  SpacetimeGrid grid(32, 32, 1.0, 1.0, -16.0, -16.0);
  // No spatial carrier: <p1> = 0 by symmetry.
  GridWavefunction psi = GridWavefunction::gaussian(
      grid, 0.0, 0.0, 4.0, 4.0, grid.momenta_t()[3], 0.0);
  MassUncertaintyReport rep = mass_uncertainty_check(psi);
  CHECK(std::abs(rep.nu1.rhs) <= 1e-12);
  CHECK(rep.nu1.slack >= -1e-12);
}

TEST_CASE("near plane waves have tiny mass variance") {
  SpacetimeGrid grid(32, 32, 1.0, 1.0, -16.0, -16.0);
  // Very wide envelope, nearly a single momentum mode.
  GridWavefunction psi = GridWavefunction::gaussian(
      grid, 0.0, 0.0, 12.0, 12.0, grid.momenta_t()[5], grid.momenta_x()[2]);
  MassUncertaintyReport rep = mass_uncertainty_check(psi);
  CHECK(rep.nu0.var_m2 <= 0.1);
  CHECK(rep.satisfied(1e-9));
}

TEST_CASE("causality probability of an axis supported state is one") {
  SpacetimeGrid grid(32, 33, 1.0, 1.0, -16.0, -16.0);
  GridWavefunction psi = GridWavefunction::axis_line(grid, 0.0);
  CHECK(causality_probability(psi, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("a single spacelike node is outside the cone") {
  SpacetimeGrid grid(33, 33, 1.0, 1.0, -16.0, -16.0);
  GridWavefunction psi = GridWavefunction::point(grid, 1.0, 10.0);
  CHECK(causality_probability(psi, 0.0) == doctest::Approx(0.0));
  // The same node is inside a cone whose vertex sits 12 steps earlier.
  CHECK(causality_probability(psi, -11.0) == doctest::Approx(1.0));
}

TEST_CASE("cone weight grows as the spatial width shrinks") {
  SpacetimeGrid grid(64, 65, 1.0, 1.0, -32.0, -32.0);
  double prev = -1.0;
  for (double sx : {12.0, 8.0, 5.0, 3.0, 2.0}) {
    GridWavefunction psi =
        GridWavefunction::gaussian(grid, 0.0, 0.0, 8.0, sx);
    const double p = causality_probability(psi, 0.0);
    CHECK(p > prev);
    CHECK(p <= 1.0 + 1e-9);
    prev = p;
  }
}

TEST_CASE("cone weight is translation covariant") {
  SpacetimeGrid grid(128, 65, 1.0, 1.0, -64.0, -32.0);
  GridWavefunction a = GridWavefunction::gaussian(grid, 0.0, 0.0, 4.0, 4.0);
  GridWavefunction b = GridWavefunction::gaussian(grid, 10.0, 0.0, 4.0, 4.0);
  const double pa = causality_probability(a, 0.0);
  const double pb = causality_probability(b, 10.0);
  CHECK(std::abs(pa - pb) <= 1e-9);
}

TEST_CASE("causality vertex must lie within the grid") {
  SpacetimeGrid grid(16, 17, 1.0, 1.0, -8.0, -8.0);
  GridWavefunction psi = GridWavefunction::gaussian(grid, 0.0, 0.0, 2.0, 2.0);
  CHECK_THROWS_AS(causality_probability(psi, 100.0), Error);
}

TEST_CASE("wavefunction csv round trips") {
  SpacetimeGrid grid(8, 4, 0.5, 0.25, -2.0, -0.5);
  auto rng = make_rng(107);
  ComplexVector amp = random_state(rng, grid.dim());
  GridWavefunction psi(grid, std::move(amp));
  std::stringstream ss;
  write_wavefunction_csv(ss, psi);
  GridWavefunction back = read_wavefunction_csv(ss, grid);
  CHECK((psi.amplitudes() - back.amplitudes()).norm() <= 1e-12);
}
