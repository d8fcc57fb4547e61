#include "pev/doubleslit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "pev/io.hpp"
#include "pev/quadrature.hpp"

namespace pev {

std::complex<double> slit_window_integral(const SlitWindow& window,
                                          const FourMomentum& k,
                                          const FourMomentum& kappa) {
  const double widths[4] = {window.width_t, window.widths[0],
                            window.widths[1], window.widths[2]};
  const double centers[4] = {window.t_center, window.x_center[0],
                             window.x_center[1], window.x_center[2]};
  for (double w : widths) {
    if (!(w > 0.0)) {
      throw InvalidWidth("slit window widths must be positive");
    }
  }

  double volume = 1.0;
  double phase = 0.0;
  double envelope = 1.0;
  for (int mu = 0; mu < 4; ++mu) {
    const double d = k[mu] - kappa[mu];
    volume *= widths[mu];
    phase += -d * centers[mu];
    envelope *= spherical_j0(0.5 * d * widths[mu]);
  }
  return volume * envelope *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

void DoubleSlitConfig::validate() const {
  if (!(m0 > 0.0)) {
    throw Error("double slit: mean mass must be positive");
  }
  if (gamma < 0.0 || !(gamma / 2.0 < m0)) {
    throw InvalidWidth("double slit: need 0 <= gamma/2 < m0");
  }
  if (!(delta1 > 0.0) || !(delta2 > 0.0) || !(delta3 > 0.0) ||
      !(delta_t > 0.0)) {
    throw InvalidWidth("double slit: all widths must be positive");
  }
  if (!(delta_t < epsilon_t)) {
    throw InvalidWidth(
        "double slit: openings overlap, need delta_t < epsilon_t");
  }
  if (paper_literal_dispersion && !(kz < m0)) {
    throw Error("literal dispersion form requires kz < m0");
  }
}

double DoubleSlitConfig::beam_energy() const {
  if (paper_literal_dispersion) {
    return std::sqrt(m0 * m0 - kz * kz);
  }
  return std::sqrt(m0 * m0 + kz * kz);
}

double DoubleSlitConfig::detector_energy(double kappa1, double kappa2) const {
  const double perp2 = kappa1 * kappa1 + kappa2 * kappa2;
  if (paper_literal_dispersion) {
    return std::sqrt(m0 * m0 + perp2 - kz * kz);
  }
  return std::sqrt(m0 * m0 + perp2 + kz * kz);
}

double DoubleSlitConfig::dispersion_delta(double kappa1, double kappa2) const {
  // beam^2 - detector^2 = -(k1^2 + k2^2) in both dispersion conventions.
  const double perp2 = kappa1 * kappa1 + kappa2 * kappa2;
  return -perp2 / (beam_energy() + detector_energy(kappa1, kappa2));
}

SlitWindow DoubleSlitConfig::window(int i) const {
  if (i != 1 && i != 2) {
    throw Error("slit window index must be 1 or 2");
  }
  SlitWindow w;
  w.t_center = (i == 1) ? t_s - 0.5 * epsilon_t : t_s + 0.5 * epsilon_t;
  w.width_t = delta_t;
  w.x_center = x_s;
  w.widths = {delta1, delta2, delta3};
  return w;
}

DoubleSlitConfig DoubleSlitConfig::pion_defaults(double epsilon_t_inv_ev) {
  DoubleSlitConfig cfg;
  cfg.m0 = 139e6;      // eV
  cfg.gamma = 2.5e-8;  // eV
  cfg.kz = 200e6;      // eV
  const UnitConversions conv;
  cfg.delta1 = 0.01e-3 * conv.meters_to_inv_ev;
  cfg.delta2 = cfg.delta1;
  cfg.delta3 = cfg.delta1;
  cfg.epsilon_t = epsilon_t_inv_ev;
  cfg.delta_t = epsilon_t_inv_ev / 3.0;
  cfg.t_s = 0.0;
  cfg.x_s = {0.0, 0.0, 0.0};
  return cfg;
}

double spatial_factor(const DoubleSlitConfig& cfg, const FourMomentum& kappa) {
  const double f1 = spherical_j0(0.5 * kappa[1] * cfg.delta1);
  const double f2 = spherical_j0(0.5 * kappa[2] * cfg.delta2);
  const double f3 = spherical_j0(0.5 * (cfg.kz + kappa[3]) * cfg.delta3);
  return f1 * f1 * f2 * f2 * f3 * f3;
}

double temporal_factor(const DoubleSlitConfig& cfg, double detuning) {
  const double c = std::cos(0.5 * detuning * cfg.epsilon_t);
  const double j = spherical_j0(0.5 * detuning * cfg.delta_t);
  const double cj = c * j;
  return cj * cj;
}

double prob_approx(const DoubleSlitConfig& cfg, const FourMomentum& kappa) {
  cfg.validate();
  if (!cfg.band().contains(kappa)) return 0.0;
  return spatial_factor(cfg, kappa) *
         temporal_factor(cfg, cfg.beam_energy() - kappa[0]);
}

ExactProbResult prob_exact(const DoubleSlitConfig& cfg,
                           const FourMomentum& kappa,
                           const std::function<double(double)>& mass_profile,
                           double rel_tol) {
  cfg.validate();
  if (!(cfg.gamma > 0.0)) {
    throw InvalidWidth("prob_exact needs a positive mass spread");
  }
  const MassShellBand band = cfg.band();

  auto profile = mass_profile ? mass_profile
                              : std::function<double(double)>(
                                    [](double) { return 1.0; });

  // Mass-band kernel: profile * Jacobian * source phase; the temporal
  // kernel multiplies it in the numerator integral.
  auto f = [&](double m2) -> std::complex<double> {
    const double e = std::sqrt(m2 + cfg.kz * cfg.kz);
    const double mag = profile(m2) / (2.0 * e);
    const double ph = -e * cfg.t_s;
    return mag * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  auto kernel = [&](double m2) -> double {
    const double e = std::sqrt(m2 + cfg.kz * cfg.kz);
    const double d = e - kappa[0];
    return std::cos(0.5 * d * cfg.epsilon_t) *
           spherical_j0(0.5 * d * cfg.delta_t);
  };

  ExactProbResult out;
  const QuadratureResult raw = integrate_complex(
      [&](double m2) { return f(m2) * kernel(m2); }, band.lower(),
      band.upper(), rel_tol);
  const QuadratureResult norm =
      integrate_complex(f, band.lower(), band.upper(), rel_tol);
  out.raw_amplitude = raw.value;
  out.norm_amplitude = norm.value;

  if (std::abs(norm.value) <= 0.0) {
    throw QuadratureFailure("zero-detuning band integral vanished");
  }
  const double temporal = std::norm(raw.value) / std::norm(norm.value);
  const double id_b = band.contains(kappa) ? 1.0 : 0.0;
  out.value = spatial_factor(cfg, kappa) * id_b * temporal;
  return out;
}

ExactProbResult prob_exact_scan(const DoubleSlitConfig& cfg, double kappa1,
                                double kappa2,
                                const std::function<double(double)>& mass_profile,
                                double rel_tol) {
  cfg.validate();
  if (!(cfg.gamma > 0.0)) {
    throw InvalidWidth("prob_exact needs a positive mass spread");
  }
  auto profile = mass_profile ? mass_profile
                              : std::function<double(double)>(
                                    [](double) { return 1.0; });

  const double m2 = cfg.m0 * cfg.m0;
  const double kz2 = cfg.kz * cfg.kz;
  const double perp2 = kappa1 * kappa1 + kappa2 * kappa2;
  // Band in u = m^2 - m0^2; the edges are small numbers formed without
  // cancellation.
  const double u_lo = -cfg.m0 * cfg.gamma + 0.25 * cfg.gamma * cfg.gamma;
  const double u_hi = cfg.m0 * cfg.gamma + 0.25 * cfg.gamma * cfg.gamma;

  const double e_det = cfg.detector_energy(kappa1, kappa2);
  const double e_bar = cfg.beam_energy();

  auto e_band = [&](double u) { return std::sqrt(m2 + u + kz2); };
  // e_band(u) - e_det and e_band(u) - e_band(0) via differences of squares.
  auto detuning = [&](double u) {
    return (u - perp2) / (e_band(u) + e_det);
  };
  auto source_phase_shift = [&](double u) {
    return u / (e_band(u) + e_bar);
  };

  auto f = [&](double u) -> std::complex<double> {
    const double e = e_band(u);
    const double mag = profile(m2 + u) / (2.0 * e);
    // Common factor e^{-i e_bar t_s} dropped; only the in-band phase
    // variation survives the modulus.
    const double ph = -source_phase_shift(u) * cfg.t_s;
    return mag * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  auto kernel = [&](double u) -> double {
    const double d = detuning(u);
    return std::cos(0.5 * d * cfg.epsilon_t) *
           spherical_j0(0.5 * d * cfg.delta_t);
  };

  ExactProbResult out;
  const QuadratureResult raw = integrate_complex(
      [&](double u) { return f(u) * kernel(u); }, u_lo, u_hi, rel_tol);
  const QuadratureResult norm = integrate_complex(f, u_lo, u_hi, rel_tol);
  out.raw_amplitude = raw.value;
  out.norm_amplitude = norm.value;
  if (std::abs(norm.value) <= 0.0) {
    throw QuadratureFailure("zero-detuning band integral vanished");
  }
  const double temporal = std::norm(raw.value) / std::norm(norm.value);
  const FourMomentum kappa{e_det, kappa1, kappa2, -cfg.kz};
  out.value = spatial_factor(cfg, kappa) * temporal;
  return out;
}

double prob_pion(const DoubleSlitConfig& cfg, double kappa1, double kappa2) {
  cfg.validate();
  const double f1 = spherical_j0(0.5 * kappa1 * cfg.delta1);
  const double f2 = spherical_j0(0.5 * kappa2 * cfg.delta2);
  return f1 * f1 * f2 * f2 *
         temporal_factor(cfg, cfg.dispersion_delta(kappa1, kappa2));
}

ScanKind scan_kind_from_string(const std::string& s) {
  if (s == "pion") return ScanKind::Pion;
  if (s == "approx") return ScanKind::Approx;
  if (s == "exact") return ScanKind::Exact;
  throw ConfigError("unknown scan kind '" + s + "'");
}

ScanFactor scan_factor_from_string(const std::string& s) {
  if (s == "full") return ScanFactor::Full;
  if (s == "temporal") return ScanFactor::Temporal;
  if (s == "spatial") return ScanFactor::Spatial;
  throw ConfigError("unknown scan factor '" + s + "'");
}

const char* to_string(ScanKind k) {
  switch (k) {
    case ScanKind::Pion:
      return "pion";
    case ScanKind::Approx:
      return "approx";
    case ScanKind::Exact:
      return "exact";
  }
  return "pion";
}

const char* to_string(ScanFactor f) {
  switch (f) {
    case ScanFactor::Full:
      return "full";
    case ScanFactor::Temporal:
      return "temporal";
    case ScanFactor::Spatial:
      return "spatial";
  }
  return "full";
}

double ProbabilityGrid::dk1() const {
  if (k1_axis.size() < 2) {
    throw DegenerateGrid("k1 axis needs at least two nodes");
  }
  return k1_axis[1] - k1_axis[0];
}

double ProbabilityGrid::dk2() const {
  if (k2_axis.size() < 2) {
    throw DegenerateGrid("k2 axis needs at least two nodes");
  }
  return k2_axis[1] - k2_axis[0];
}

double ProbabilityGrid::sum() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

std::vector<double> uniform_axis(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) {
    throw Error("uniform_axis needs n >= 2 and hi > lo");
  }
  std::vector<double> axis(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) axis[i] = lo + step * i;
  return axis;
}

namespace {

double scan_node(const DoubleSlitConfig& cfg, double k1, double k2,
                 ScanKind kind, ScanFactor factor) {
  switch (kind) {
    case ScanKind::Pion: {
      switch (factor) {
        case ScanFactor::Full:
          return prob_pion(cfg, k1, k2);
        case ScanFactor::Temporal:
          return temporal_factor(cfg, cfg.dispersion_delta(k1, k2));
        case ScanFactor::Spatial: {
          const double f1 = spherical_j0(0.5 * k1 * cfg.delta1);
          const double f2 = spherical_j0(0.5 * k2 * cfg.delta2);
          return f1 * f1 * f2 * f2;
        }
      }
      break;
    }
    case ScanKind::Approx: {
      // On-shell detector momentum: the band indicator is one by
      // construction, and the detuning comes from the cancellation-free
      // dispersion form.
      const FourMomentum kappa{cfg.detector_energy(k1, k2), k1, k2, -cfg.kz};
      switch (factor) {
        case ScanFactor::Full:
          return spatial_factor(cfg, kappa) *
                 temporal_factor(cfg, cfg.dispersion_delta(k1, k2));
        case ScanFactor::Temporal:
          return temporal_factor(cfg, cfg.dispersion_delta(k1, k2));
        case ScanFactor::Spatial:
          return spatial_factor(cfg, kappa);
      }
      break;
    }
    case ScanKind::Exact: {
      switch (factor) {
        case ScanFactor::Full:
          return prob_exact_scan(cfg, k1, k2).value;
        case ScanFactor::Temporal: {
          ExactProbResult r = prob_exact_scan(cfg, k1, k2);
          return std::norm(r.raw_amplitude) / std::norm(r.norm_amplitude);
        }
        case ScanFactor::Spatial: {
          const FourMomentum kappa{cfg.detector_energy(k1, k2), k1, k2,
                                   -cfg.kz};
          return spatial_factor(cfg, kappa);
        }
      }
      break;
    }
  }
  throw Error("unhandled scan request");
}

}  // namespace

ProbabilityGrid grid_scan(const DoubleSlitConfig& cfg,
                          const std::vector<double>& k1_axis,
                          const std::vector<double>& k2_axis, ScanKind kind,
                          ScanFactor factor) {
  cfg.validate();
  if (k1_axis.empty() || k2_axis.empty()) {
    throw Error("grid_scan: axes must be nonempty");
  }
  ProbabilityGrid grid;
  grid.k1_axis = k1_axis;
  grid.k2_axis = k2_axis;
  grid.values.assign(k1_axis.size() * k2_axis.size(), 0.0);

  const std::size_t rows = k1_axis.size();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_tasks = std::min<std::size_t>(hw, rows);
  std::vector<std::future<void>> tasks;
  tasks.reserve(n_tasks);
  for (std::size_t task = 0; task < n_tasks; ++task) {
    tasks.push_back(std::async(std::launch::async, [&, task]() {
      for (std::size_t i = task; i < rows; i += n_tasks) {
        for (std::size_t j = 0; j < k2_axis.size(); ++j) {
          grid.values[i * k2_axis.size() + j] =
              scan_node(cfg, k1_axis[i], k2_axis[j], kind, factor);
        }
      }
    }));
  }
  for (auto& t : tasks) t.get();
  return grid;
}

ProbabilityGrid normalize_grid(const ProbabilityGrid& grid) {
  for (double v : grid.values) {
    if (!std::isfinite(v)) {
      throw DegenerateGrid("grid contains non-finite values");
    }
  }
  const double total = grid.sum() * grid.cell_area();
  if (!(total > 0.0)) {
    throw DegenerateGrid("grid sums to zero, cannot normalize");
  }
  ProbabilityGrid out = grid;
  for (double& v : out.values) v /= total;
  out.normalized = true;
  return out;
}

void write_grid_csv(std::ostream& os, const ProbabilityGrid& grid) {
  os << "kappa1_eV,kappa2_eV,prob\n";
  for (std::size_t i = 0; i < grid.k1_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.k2_axis.size(); ++j) {
      os << format_double(grid.k1_axis[i]) << ','
         << format_double(grid.k2_axis[j]) << ','
         << format_double(grid.value(i, j)) << '\n';
    }
  }
}

void save_grid(const std::filesystem::path& path, const ProbabilityGrid& grid) {
  std::ostringstream os;
  write_grid_csv(os, grid);
  atomic_write_file(path, os.str());
}

}  // namespace pev
