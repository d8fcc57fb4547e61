#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pev/generators.hpp"
#include "pev/units.hpp"

namespace pev {

/// Spacetime box of one slit opening: the time interval
/// (t_center - width_t/2, t_center + width_t/2) times the spatial box
/// around x_center with edge lengths widths. All in eV^-1.
struct SlitWindow {
  double t_center = 0.0;
  double width_t = 0.0;
  std::array<double, 3> x_center{0.0, 0.0, 0.0};
  std::array<double, 3> widths{0.0, 0.0, 0.0};
};

/// Closed form of the plane-wave integral over one window:
///   dT d1 d2 d3 * phase(t_i, x_s) * prod_mu j0((k_mu - kappa_mu) d_mu / 2)
/// with phase = e^{-i(k0-kappa0) t_i} e^{-i(kvec-kappavec).x_s}.
std::complex<double> slit_window_integral(const SlitWindow& window,
                                          const FourMomentum& k,
                                          const FourMomentum& kappa);

/// Physical parameters of the temporal double slit in natural units.
struct DoubleSlitConfig {
  double m0 = 0.0;       // mean mass, eV
  double gamma = 0.0;    // mass spread, eV
  double kz = 0.0;       // beam momentum along -z, eV
  double delta1 = 0.0;   // slit widths, eV^-1
  double delta2 = 0.0;
  double delta3 = 0.0;
  double delta_t = 0.0;    // opening duration, eV^-1
  double epsilon_t = 0.0;  // time between the two openings, eV^-1
  double t_s = 0.0;        // mean opening time, eV^-1
  std::array<double, 3> x_s{0.0, 0.0, 0.0};  // slit location, eV^-1

  /// Reproduces the printed dispersion sqrt(m^2 - kz^2) instead of the
  /// on-shell sqrt(m^2 + kz^2). Off by default.
  bool paper_literal_dispersion = false;

  UnitConversions units;

  /// Throws InvalidWidth / Error when gamma/2 >= m0, delta_t >= epsilon_t
  /// or any width is nonpositive.
  void validate() const;

  /// sqrt(m0^2 + kz^2), or the literal variant when selected.
  double beam_energy() const;
  /// Detector energy for perpendicular momenta (k1, k2) with kappa3 = -kz.
  double detector_energy(double kappa1, double kappa2) const;
  /// beam_energy - detector_energy, evaluated through the difference of
  /// squares: the direct subtraction cancels catastrophically at pion
  /// scales (detunings of 1e-8 eV against energies of 1e8 eV).
  double dispersion_delta(double kappa1, double kappa2) const;

  SlitWindow window(int i) const;  // i = 1, 2; t_i = t_s -+ epsilon_t/2
  MassShellBand band() const { return MassShellBand(m0, gamma); }

  /// Pion setup of the worked example: m = 139 MeV, Gamma = 2.5e-8 eV,
  /// slits 0.01 mm wide, kz = 200 MeV, delta_t = epsilon_t / 3.
  static DoubleSlitConfig pion_defaults(double epsilon_t_inv_ev);
};

/// Four-momentum components are physical (contravariant): the beam moves
/// along -z, so the pattern center is kappa = (E0, 0, 0, -kz).
/// Spatial envelope j0^2(k1 d1/2) j0^2(k2 d2/2) j0^2((kz+k3) d3/2).
double spatial_factor(const DoubleSlitConfig& cfg, const FourMomentum& kappa);
/// Temporal envelope [cos(D eT/2) j0(D dT/2)]^2 at detuning D.
double temporal_factor(const DoubleSlitConfig& cfg, double detuning);

/// Closed-form detection probability (mean-value-theorem reduction):
/// spatial_factor * band indicator * temporal_factor at the mean-mass
/// detuning. Unnormalized; equals 1 at the pattern center.
double prob_approx(const DoubleSlitConfig& cfg, const FourMomentum& kappa);

/// Detection probability with the mass-band integral evaluated by adaptive
/// quadrature. The amplitude is normalized by the zero-detuning band
/// integral so the gamma -> 0 limit reproduces prob_approx; raw_amplitude
/// carries the unreduced integral. mass_profile defaults to a constant on
/// the band.
struct ExactProbResult {
  double value = 0.0;                  // normalized, comparable to prob_approx
  std::complex<double> raw_amplitude;  // band integral without normalization
  std::complex<double> norm_amplitude; // zero-detuning band integral
};
ExactProbResult prob_exact(
    const DoubleSlitConfig& cfg, const FourMomentum& kappa,
    const std::function<double(double)>& mass_profile = {},
    double rel_tol = 1e-8);

/// prob_exact for an on-shell detector momentum (kappa1, kappa2, -kz).
/// Integrates over u = m^2 - m0^2 with detunings and source phases formed
/// from differences of squares, which stays accurate at pion scales where
/// the generic four-vector interface would cancel catastrophically. The
/// band indicator is identically one here (the constructed momentum is on
/// shell by definition).
ExactProbResult prob_exact_scan(
    const DoubleSlitConfig& cfg, double kappa1, double kappa2,
    const std::function<double(double)>& mass_profile = {},
    double rel_tol = 1e-8);

/// The pion-example closed form as a function of the perpendicular
/// momenta; kappa0 is on shell and kappa3 = -kz. Equals 1 at (0, 0).
double prob_pion(const DoubleSlitConfig& cfg, double kappa1, double kappa2);

enum class ScanKind { Pion, Approx, Exact };
enum class ScanFactor { Full, Temporal, Spatial };

ScanKind scan_kind_from_string(const std::string& s);
ScanFactor scan_factor_from_string(const std::string& s);
const char* to_string(ScanKind k);
const char* to_string(ScanFactor f);

/// Uniform axes with values in row-major order (k1 rows, k2 columns).
struct ProbabilityGrid {
  std::vector<double> k1_axis;
  std::vector<double> k2_axis;
  std::vector<double> values;
  bool normalized = false;

  double value(std::size_t i, std::size_t j) const {
    return values[i * k2_axis.size() + j];
  }
  double dk1() const;
  double dk2() const;
  double cell_area() const { return dk1() * dk2(); }
  double sum() const;
};

std::vector<double> uniform_axis(double lo, double hi, std::size_t n);

/// Evaluates the chosen probability on the axes. Node evaluations are
/// pure; rows are scanned in parallel with the output order fixed by node
/// index, so results do not depend on scheduling.
ProbabilityGrid grid_scan(const DoubleSlitConfig& cfg,
                          const std::vector<double>& k1_axis,
                          const std::vector<double>& k2_axis, ScanKind kind,
                          ScanFactor factor = ScanFactor::Full);

/// Scales values so sum * dk1 * dk2 = 1. Throws DegenerateGrid when every
/// value is zero.
ProbabilityGrid normalize_grid(const ProbabilityGrid& grid);

/// CSV header kappa1_eV,kappa2_eV,prob; row-major; 17 significant digits.
void write_grid_csv(std::ostream& os, const ProbabilityGrid& grid);
void save_grid(const std::filesystem::path& path, const ProbabilityGrid& grid);

}  // namespace pev
