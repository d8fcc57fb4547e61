#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pev/chain_demo.hpp"
#include "pev/doubleslit.hpp"
#include "pev/quadrature.hpp"
#include "oracles.hpp"

using namespace pev;
using namespace pev::testing;

namespace {

constexpr double kPi = 3.14159265358979323846;

SlitWindow unit_window() {
  SlitWindow w;
  w.t_center = 0.4;
  w.width_t = 1.3;
  w.x_center = {0.2, -0.5, 1.0};
  w.widths = {0.9, 1.1, 0.7};
  return w;
}

DoubleSlitConfig desk_config() {
  DoubleSlitConfig cfg;
  cfg.m0 = 1.0;
  cfg.gamma = 0.01;
  cfg.kz = 0.5;
  cfg.delta1 = 2.0;
  cfg.delta2 = 2.0;
  cfg.delta3 = 2.0;
  cfg.epsilon_t = 30.0;
  cfg.delta_t = 10.0;
  cfg.t_s = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("coincident momenta give the window volume") {
  SlitWindow w = unit_window();
  FourMomentum k{1.0, 0.2, -0.3, 0.4};
  const std::complex<double> v = slit_window_integral(w, k, k);
  const double volume = w.width_t * w.widths[0] * w.widths[1] * w.widths[2];
  CHECK(v.real() == doctest::Approx(volume));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("first temporal bessel zero kills the window integral") {
  SlitWindow w = unit_window();
  FourMomentum kappa{0.0, 0.1, 0.2, 0.3};
  FourMomentum k = kappa;
  k[0] += 2.0 * kPi / w.width_t;  // (k0 - kappa0) width_t / 2 = pi
  CHECK(std::abs(slit_window_integral(w, k, kappa)) <= 1e-12);
}

TEST_CASE("window integral matches the brute force riemann oracle") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> mom(-3.0, 3.0);
  std::uniform_real_distribution<double> width(0.4, 2.0);
  std::uniform_real_distribution<double> cen(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    SlitWindow w;
    w.t_center = cen(rng);
    w.width_t = width(rng);
    w.x_center = {cen(rng), cen(rng), cen(rng)};
    w.widths = {width(rng), width(rng), width(rng)};
    FourMomentum k{mom(rng), mom(rng), mom(rng), mom(rng)};
    FourMomentum kappa{mom(rng), mom(rng), mom(rng), mom(rng)};

    const std::complex<double> closed = slit_window_integral(w, k, kappa);
    const std::complex<double> oracle =
        window_riemann_adaptive(w, k, kappa, 1e-9);
    CHECK(std::abs(closed - oracle) <= 1e-6 * std::abs(closed));
  }
}

TEST_CASE("tensor riemann sum equals the naive quadruple loop") {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> mom(-2.0, 2.0);
  SlitWindow w = unit_window();
  for (int trial = 0; trial < 3; ++trial) {
    FourMomentum k{mom(rng), mom(rng), mom(rng), mom(rng)};
    FourMomentum kappa{mom(rng), mom(rng), mom(rng), mom(rng)};
    for (int n : {4, 9, 16}) {
      const auto naive = window_riemann_naive(w, k, kappa, n);
      const auto tensor = window_riemann_tensor(w, k, kappa, n);
      CHECK(std::abs(naive - tensor) <= 1e-12 * std::max(1.0, std::abs(naive)));
    }
  }
}

TEST_CASE("config validation catches bad setups") {
  DoubleSlitConfig cfg = desk_config();
  cfg.gamma = 3.0;  // gamma/2 >= m0
  CHECK_THROWS_AS(cfg.validate(), InvalidWidth);

  cfg = desk_config();
  cfg.delta_t = cfg.epsilon_t;  // overlapping openings
  CHECK_THROWS_AS(cfg.validate(), InvalidWidth);

  cfg = desk_config();
  cfg.delta1 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidWidth);
}

TEST_CASE("prob_approx peaks at the pattern center") {
  DoubleSlitConfig cfg = desk_config();
  const FourMomentum center{cfg.beam_energy(), 0.0, 0.0, -cfg.kz};
  CHECK(prob_approx(cfg, center) == doctest::Approx(1.0));
}

TEST_CASE("the cosine factor is periodic in the detuning") {
  DoubleSlitConfig cfg = desk_config();
  const double detuning = 2.0 * kPi / cfg.epsilon_t;  // one full period
  const double t = temporal_factor(cfg, detuning);
  // cos^2 back at its maximum; only the slow temporal j0 reduces it.
  const double j = spherical_j0(0.5 * detuning * cfg.delta_t);
  CHECK(t == doctest::Approx(j * j).epsilon(1e-12));
}

TEST_CASE("temporal zeros sit where the cosine argument is pi over two") {
  DoubleSlitConfig cfg = desk_config();
  const double detuning = kPi / cfg.epsilon_t;
  CHECK(temporal_factor(cfg, detuning) <= 1e-25);
}

TEST_CASE("off-band momenta are rejected by the indicator") {
  DoubleSlitConfig cfg = desk_config();
  FourMomentum off{10.0 * cfg.m0, 0.0, 0.0, -cfg.kz};
  CHECK(prob_approx(cfg, off) == 0.0);
  CHECK(prob_exact(cfg, off).value == 0.0);
}

TEST_CASE("exact and approximate forms agree for narrow bands") {
  DoubleSlitConfig cfg = desk_config();
  cfg.gamma = 1e-6 * cfg.m0;
  for (double k1 : {0.0, 0.02, 0.05}) {
    const FourMomentum kappa{cfg.detector_energy(k1, 0.0), k1, 0.0, -cfg.kz};
    const double approx = prob_approx(cfg, kappa);
    const double exact = prob_exact(cfg, kappa).value;
    REQUIRE(approx > 0.0);
    CHECK(exact / approx == doctest::Approx(1.0).epsilon(1e-3));

    const double scan = prob_exact_scan(cfg, k1, 0.0).value;
    CHECK(scan / approx == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("scanned exact probability peaks on shell") {
  DoubleSlitConfig cfg = desk_config();
  std::vector<double> axis = uniform_axis(-0.06, 0.06, 13);
  ProbabilityGrid grid = grid_scan(cfg, axis, axis, ScanKind::Exact);
  // Global max at the center node (kappa perp = 0).
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (grid.values[i] > grid.values[best]) best = i;
  }
  CHECK(best == grid.values.size() / 2);
}

TEST_CASE("pion probability is one at forward detection") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-10 * 1.51927e15);
  CHECK(prob_pion(cfg, 0.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("pion first spatial zero sits at 2 pi over the slit width") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-10 * 1.51927e15);
  const double k1 = 2.0 * kPi / cfg.delta1;  // 0.124 eV for 0.01 mm slits
  CHECK(k1 == doctest::Approx(0.12399).epsilon(1e-3));
  CHECK(prob_pion(cfg, k1, 0.0) <= 1e-12);
}

TEST_CASE("pion first temporal dark ring follows the dispersion") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-7 * 1.51927e15);
  // Solve beam_energy - detector_energy = -pi/epsilon_t for kappa_perp.
  const double e0 = cfg.beam_energy();
  const double target = kPi / cfg.epsilon_t;
  const double kperp = std::sqrt((e0 + target) * (e0 + target) - e0 * e0);
  const double t = temporal_factor(cfg, cfg.dispersion_delta(kperp, 0.0));
  CHECK(t <= 1e-18);
  // About 3.2 eV for the 1e-7 s separation.
  CHECK(kperp == doctest::Approx(3.17).epsilon(0.01));
}

TEST_CASE("pion pattern has the parity and exchange symmetries") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-10 * 1.51927e15);
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> mom(-0.3, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = mom(rng), b = mom(rng);
    const double p = prob_pion(cfg, a, b);
    CHECK(prob_pion(cfg, -a, -b) == doctest::Approx(p).epsilon(1e-12));
    CHECK(prob_pion(cfg, b, a) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("temporal factor depends only on the perpendicular radius") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-10 * 1.51927e15);
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> mom(0.0, 150.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = mom(rng);
    const double th1 = ang(rng), th2 = ang(rng);
    const double t1 = temporal_factor(
        cfg, cfg.dispersion_delta(r * std::cos(th1), r * std::sin(th1)));
    const double t2 = temporal_factor(
        cfg, cfg.dispersion_delta(r * std::cos(th2), r * std::sin(th2)));
    CHECK(std::abs(t1 - t2) <= 1e-12 * std::max(1.0, t1));
  }
}

TEST_CASE("cos fringe zeros are spaced 2 pi over epsilon_t in detuning") {
  DoubleSlitConfig cfg = desk_config();
  // Zeros of cos^2 at detuning (2n+1) pi / epsilon_t.
  for (int n = 0; n < 4; ++n) {
    const double detuning = (2 * n + 1) * kPi / cfg.epsilon_t;
    const double c = std::cos(0.5 * detuning * cfg.epsilon_t);
    CHECK(std::abs(c) <= 1e-12);
  }
  const double gap0 = 3.0 * kPi / cfg.epsilon_t - kPi / cfg.epsilon_t;
  CHECK(gap0 == doctest::Approx(2.0 * kPi / cfg.epsilon_t).epsilon(1e-9));
}

TEST_CASE("shrinking epsilon_t widens the first dark ring as predicted") {
  // Radius scaling of the first temporal zero under a 10x change.
  auto ring = [](double eps_factor) {
    DoubleSlitConfig cfg =
        DoubleSlitConfig::pion_defaults(eps_factor * 1.51927e15);
    const double e0 = cfg.beam_energy();
    const double target = kPi / cfg.epsilon_t;
    return std::sqrt((e0 + target) * (e0 + target) - e0 * e0);
  };
  const double r1 = ring(1e-9);
  const double r2 = ring(1e-10);
  // kperp ~ sqrt(2 E0 pi / eps): a 10x shorter separation scales the
  // radius by sqrt(10).
  CHECK(r2 / r1 == doctest::Approx(std::sqrt(10.0)).epsilon(1e-6));
}

TEST_CASE("grid normalization sums to one") {
  ProbabilityGrid grid;
  grid.k1_axis = uniform_axis(-1.0, 1.0, 5);
  grid.k2_axis = uniform_axis(-2.0, 2.0, 9);
  grid.values.assign(45, 1.0);
  ProbabilityGrid normed = normalize_grid(grid);
  CHECK(normed.normalized);
  CHECK(normed.sum() * normed.cell_area() == doctest::Approx(1.0).epsilon(1e-12));
  // Uniform grid: every value is one over the covered area.
  const double area = 45 * normed.cell_area();
  CHECK(normed.values[0] == doctest::Approx(1.0 / area));
}

TEST_CASE("a delta-like grid normalizes to the inverse cell area") {
  ProbabilityGrid grid;
  grid.k1_axis = uniform_axis(0.0, 1.0, 3);
  grid.k2_axis = uniform_axis(0.0, 1.0, 3);
  grid.values.assign(9, 0.0);
  grid.values[4] = 123.0;
  ProbabilityGrid normed = normalize_grid(grid);
  CHECK(normed.values[4] == doctest::Approx(1.0 / normed.cell_area()));
}

TEST_CASE("an all-zero grid cannot be normalized") {
  ProbabilityGrid grid;
  grid.k1_axis = uniform_axis(0.0, 1.0, 3);
  grid.k2_axis = uniform_axis(0.0, 1.0, 3);
  grid.values.assign(9, 0.0);
  CHECK_THROWS_AS(normalize_grid(grid), DegenerateGrid);
}

TEST_CASE("pion scan normalizes within 1e-9") {
  DoubleSlitConfig cfg = DoubleSlitConfig::pion_defaults(1e-10 * 1.51927e15);
  std::vector<double> axis = uniform_axis(-0.3, 0.3, 41);
  ProbabilityGrid grid = grid_scan(cfg, axis, axis, ScanKind::Pion);
  ProbabilityGrid normed = normalize_grid(grid);
  CHECK(std::abs(normed.sum() * normed.cell_area() - 1.0) <= 1e-9);
}

TEST_CASE("grid csv output is stable and well formed") {
  ProbabilityGrid grid;
  grid.k1_axis = {0.0, 1.0};
  grid.k2_axis = {0.0, 1.0};
  grid.values = {0.25, 0.5, 0.75, 1.0};
  std::ostringstream a, b;
  write_grid_csv(a, grid);
  write_grid_csv(b, grid);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("kappa1_eV,kappa2_eV,prob\n", 0) == 0);
}

TEST_CASE("literal dispersion switch changes the pattern") {
  DoubleSlitConfig cfg = desk_config();
  DoubleSlitConfig lit = cfg;
  lit.paper_literal_dispersion = true;
  const double a = prob_pion(cfg, 0.05, 0.0);
  const double b = prob_pion(lit, 0.05, 0.0);
  CHECK(a != b);
  // The literal form requires kz < m0.
  lit.kz = 2.0 * lit.m0;
  CHECK_THROWS_AS(prob_pion(lit, 0.0, 0.0), Error);
}

TEST_CASE("chain demo factorizes into window integrals") {
  ChainDemoConfig cfg;
  ChainDemoReport rep = pev_chain_demo(cfg);
  CHECK(rep.completeness_residual <= 1e-9);
  CHECK(rep.band_mode_count >= 2);
  CHECK(rep.probe_count >= 3);
  CHECK(rep.factorization_rel_err <= 0.05);
}

TEST_CASE("single-window chain reduces to one envelope") {
  ChainDemoConfig cfg;
  cfg.single_window = true;
  ChainDemoReport rep = pev_chain_demo(cfg);
  CHECK(rep.completeness_residual <= 1e-9);
  CHECK(rep.factorization_rel_err <= 0.05);
}
