#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "pev/channel.hpp"
#include "pev/config.hpp"
#include "pev/doubleslit.hpp"
#include "pev/evolve.hpp"
#include "pev/generators.hpp"
#include "pev/io.hpp"
#include "pev/spectral.hpp"
#include "pev/timeops.hpp"
#include "pev/version.hpp"

namespace pev::cli {

namespace {

std::map<std::string, double> parse_tolerances(
    const std::vector<std::string>& overrides) {
  std::map<std::string, double> out;
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("tolerance override '" + item +
                        "' is not of the form NAME=VALUE");
    }
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("tolerance override '" + item + "' has no number");
    }
  }
  return out;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidWidth& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidDensity& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const NotHermitian& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const NotUnitary& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void emit_manifest(const CommonOptions& opts, const ConfigFile& cfg,
                   const std::string& command,
                   std::vector<ManifestEntry> extra) {
  const UnitConversions conv;
  std::vector<ManifestEntry> entries;
  entries.push_back({"command", command});
  entries.push_back({"config", opts.config.string()});
  entries.push_back({"config_hash", hex64(cfg.hash())});
  entries.push_back(
      {"seconds_to_inv_ev", format_double(conv.seconds_to_inv_ev)});
  entries.push_back({"meters_to_inv_ev", format_double(conv.meters_to_inv_ev)});
  for (auto& e : extra) entries.push_back(std::move(e));
  write_manifest(opts.out_dir / (command + "_manifest.txt"),
                 entries);
}

}  // namespace

int cmd_validate(const CommonOptions& opts) {
  return run_guarded([&]() {
    ConfigFile cfg = ConfigFile::parse_file(opts.config);
    const ConfigSection& sec = cfg.require_section("validate");
    const auto tols = parse_tolerances(opts.tolerance_overrides);

    double tol = sec.get_double("tolerance", 1e-10);
    if (auto it = tols.find("family"); it != tols.end()) tol = it->second;

    const int max_dim =
        static_cast<int>(sec.get_int("max_dim", kDefaultFileDimCap));
    const auto family_path = opts.config.parent_path() / sec.require("family");
    ChannelFamily family = load_family(family_path, max_dim);
    FamilyDiagnostics diag = validate_family(family);

    std::ostringstream report;
    report << "suite = family\n" << diag.to_text();
    bool ok = diag.pass(tol);

    if (sec.has("density")) {
      DensityTolerances dtol;
      if (auto it = tols.find("herm"); it != tols.end()) dtol.herm = it->second;
      if (auto it = tols.find("pos"); it != tols.end()) dtol.pos = it->second;
      if (auto it = tols.find("trace"); it != tols.end())
        dtol.trace = it->second;

      Operator rho_op = load_operator(
          opts.config.parent_path() / sec.require("density"), max_dim);
      DensityDiagnostics ddiag = check_density(rho_op, dtol);
      report << "suite = density\n" << ddiag.to_text();
      ok = ok && ddiag.ok();

      if (ddiag.ok()) {
        SpectralDecomposition sd = spectral_decompose(rho_op);
        const double recon =
            (sd.reconstruct() - rho_op).max_abs();
        const double proj = sd.projector_residual();
        report << "suite = spectral\n"
               << "reconstruction_residual = " << recon << "\n"
               << "projector_residual = " << proj << "\n";
        ok = ok && recon <= tol && proj <= tol;
      }
    }
    report << "result = " << (ok ? "pass" : "fail") << "\n";

    const std::string report_name =
        sec.get_string("report", "validate_report.txt");
    atomic_write_file(opts.out_dir / report_name, report.str());
    emit_manifest(opts, cfg, "validate",
                  {{"report", report_name},
                   {"tolerance", format_double(tol)},
                   {"result", ok ? "pass" : "fail"}});
    std::cout << report.str();
    return ok ? kExitOk : kExitInvariant;
  });
}

int cmd_evolve(const CommonOptions& opts) {
  return run_guarded([&]() {
    ConfigFile cfg = ConfigFile::parse_file(opts.config);
    const ConfigSection& sec = cfg.require_section("evolve");

    const int max_dim =
        static_cast<int>(sec.get_int("max_dim", kDefaultFileDimCap));
    ChannelFamily family =
        load_family(opts.config.parent_path() / sec.require("family"), max_dim);
    Operator rho_op =
        load_operator(opts.config.parent_path() / sec.require("rho0"), max_dim);
    DensityOperator rho0(rho_op);

    const int steps = static_cast<int>(sec.get_int("steps", 1));
    if (steps < 1) throw ConfigError("steps must be >= 1");
    const std::int64_t paths = sec.get_int("paths", 1);
    if (paths < 1) throw ConfigError("paths must be >= 1");
    const std::uint64_t seed =
        opts.seed.value_or(static_cast<std::uint64_t>(sec.get_int("seed", 0)));

    std::vector<ChannelFamily> families(static_cast<std::size_t>(steps),
                                        family);
    for (int i = 0; i < steps; ++i) families[i].step = i + 1;

    std::string out_name;
    if (paths == 1) {
      PathRecord record = sample_path(families, rho0, seed);
      std::ostringstream os;
      write_path_csv(os, record);
      out_name = sec.get_string("out_csv", "path.csv");
      atomic_write_file(opts.out_dir / out_name, os.str());
    } else {
      BranchFrequencies freq = aggregate_paths(families, rho0, seed, paths);
      std::ostringstream os;
      write_frequency_csv(os, freq);
      out_name = sec.get_string("out_csv", "frequencies.csv");
      atomic_write_file(opts.out_dir / out_name, os.str());
    }

    emit_manifest(opts, cfg, "evolve",
                  {{"seed", std::to_string(seed)},
                   {"paths", std::to_string(paths)},
                   {"steps", std::to_string(steps)},
                   {"out_csv", out_name}});
    return kExitOk;
  });
}

int cmd_doubleslit(const CommonOptions& opts, const DoubleslitOptions& ds) {
  return run_guarded([&]() {
    ConfigFile cfg = ConfigFile::parse_file(opts.config);
    const ConfigSection& slit = cfg.require_section("slit");
    const ConfigSection& scan = cfg.require_section("scan");
    const UnitConversions conv;

    DoubleSlitConfig dcfg;
    dcfg.m0 = slit.get_quantity("m0", Dimension::Energy, conv);
    dcfg.gamma = slit.get_quantity("gamma", Dimension::Energy, conv);
    dcfg.kz = slit.get_quantity("kz", Dimension::Energy, 0.0, conv);
    dcfg.delta1 = slit.get_quantity("delta1", Dimension::InverseEnergy, conv);
    dcfg.delta2 = slit.get_quantity("delta2", Dimension::InverseEnergy, conv);
    dcfg.delta3 = slit.get_quantity("delta3", Dimension::InverseEnergy,
                                    dcfg.delta1, conv);
    dcfg.epsilon_t =
        ds.epsilon_t.empty()
            ? slit.get_quantity("epsilon_t", Dimension::InverseEnergy, conv)
            : convert_quantity(ds.epsilon_t, Dimension::InverseEnergy, conv);
    if (slit.has("delta_t")) {
      dcfg.delta_t = slit.get_quantity("delta_t", Dimension::InverseEnergy, conv);
    } else {
      dcfg.delta_t =
          dcfg.epsilon_t * slit.get_double("delta_t_over_epsilon_t", 1.0 / 3.0);
    }
    dcfg.t_s = slit.get_quantity("t_s", Dimension::InverseEnergy, 0.0, conv);
    dcfg.paper_literal_dispersion =
        slit.get_bool("paper_literal_dispersion", false);
    dcfg.validate();

    const ScanKind kind =
        scan_kind_from_string(slit.get_string("kind", "pion"));
    const ScanFactor factor = scan_factor_from_string(
        ds.factor.empty() ? slit.get_string("factor", "full") : ds.factor);

    const auto axis = [&](const char* lo_key, const char* hi_key,
                          const char* n_key) {
      const double lo = scan.get_quantity(lo_key, Dimension::Energy, conv);
      const double hi = scan.get_quantity(hi_key, Dimension::Energy, conv);
      const auto n = static_cast<std::size_t>(scan.get_int(n_key));
      return uniform_axis(lo, hi, n);
    };
    const std::vector<double> k1 = axis("k1_min", "k1_max", "k1_points");
    const std::vector<double> k2 = axis("k2_min", "k2_max", "k2_points");

    ProbabilityGrid grid = grid_scan(dcfg, k1, k2, kind, factor);
    if (slit.get_bool("normalize", false)) {
      grid = normalize_grid(grid);
    }

    const std::string out_name = scan.get_string("out_csv", "grid.csv");
    std::ostringstream os;
    write_grid_csv(os, grid);
    atomic_write_file(opts.out_dir / out_name, os.str());

    emit_manifest(
        opts, cfg, "doubleslit",
        {{"kind", to_string(kind)},
         {"factor", to_string(factor)},
         {"m0_eV", format_double(dcfg.m0)},
         {"gamma_eV", format_double(dcfg.gamma)},
         {"kz_eV", format_double(dcfg.kz)},
         {"delta1_inv_eV", format_double(dcfg.delta1)},
         {"delta2_inv_eV", format_double(dcfg.delta2)},
         {"delta3_inv_eV", format_double(dcfg.delta3)},
         {"delta_t_inv_eV", format_double(dcfg.delta_t)},
         {"epsilon_t_inv_eV", format_double(dcfg.epsilon_t)},
         {"t_s_inv_eV", format_double(dcfg.t_s)},
         {"normalized", grid.normalized ? "true" : "false"},
         {"out_csv", out_name}});
    return kExitOk;
  });
}

int cmd_uncertainty(const CommonOptions& opts) {
  return run_guarded([&]() {
    ConfigFile cfg = ConfigFile::parse_file(opts.config);
    const ConfigSection& sec = cfg.require_section("uncertainty");
    const UnitConversions conv;

    const int n_t = static_cast<int>(sec.get_int("n_t", 256));
    const double dt =
        sec.get_quantity("dt", Dimension::InverseEnergy, 1.0, conv);
    const double lo = sec.get_double("sigma_over_dt_min", 8.0);
    const double hi = sec.get_double("sigma_over_dt_max", n_t / 10.0);
    const int points = static_cast<int>(sec.get_int("sweep_points", 12));
    if (points < 1 || !(hi >= lo) || !(lo > 0.0)) {
      throw ConfigError("bad sweep range");
    }

    const SpacetimeGrid grid(n_t, 1, dt, 1.0, -0.5 * n_t * dt, 0.0);
    const Operator t_op = time_operator(grid);
    const Operator p0 = p_mu_operator(grid, 0);

    std::ostringstream os;
    os << "sigma_t,var_t,var_p0,product,bound,ratio\n";
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < points; ++s) {
      const double f =
          points == 1 ? lo : lo + (hi - lo) * s / double(points - 1);
      const double sigma = f * dt;
      GridWavefunction psi =
          GridWavefunction::gaussian(grid, 0.0, 0.0, sigma, 1.0);
      RobertsonReport rep = robertson_check(t_op, p0, psi);
      const double ratio = rep.product / rep.bound;
      min_ratio = std::min(min_ratio, ratio);
      os << format_double(sigma) << ',' << format_double(rep.var_a) << ','
         << format_double(rep.var_b) << ',' << format_double(rep.product)
         << ',' << format_double(rep.bound) << ',' << format_double(ratio)
         << '\n';
    }
    const std::string out_name = sec.get_string("out_csv", "uncertainty.csv");
    atomic_write_file(opts.out_dir / out_name, os.str());

    // Mass-position relation on a small 2d packet.
    const int m_nt = static_cast<int>(sec.get_int("mass_n_t", 48));
    const int m_nx = static_cast<int>(sec.get_int("mass_n_x", 48));
    const SpacetimeGrid mgrid(m_nt, m_nx, 1.0, 1.0, -0.5 * m_nt, -0.5 * m_nx);
    const std::vector<double> kt = mgrid.momenta_t();
    const std::vector<double> kx = mgrid.momenta_x();
    GridWavefunction mpsi = GridWavefunction::gaussian(
        mgrid, 0.0, 0.0, 5.0, 5.0, kt[m_nt / 8], kx[m_nx / 8]);
    MassUncertaintyReport mrep = mass_uncertainty_check(mpsi);
    std::ostringstream ms;
    ms << "nu,var_m2,var_x,lhs,rhs,slack\n";
    ms << "0," << format_double(mrep.nu0.var_m2) << ','
       << format_double(mrep.nu0.var_x) << ',' << format_double(mrep.nu0.lhs)
       << ',' << format_double(mrep.nu0.rhs) << ','
       << format_double(mrep.nu0.slack) << '\n';
    ms << "1," << format_double(mrep.nu1.var_m2) << ','
       << format_double(mrep.nu1.var_x) << ',' << format_double(mrep.nu1.lhs)
       << ',' << format_double(mrep.nu1.rhs) << ','
       << format_double(mrep.nu1.slack) << '\n';
    const std::string mass_name =
        sec.get_string("mass_out_csv", "mass_uncertainty.csv");
    atomic_write_file(opts.out_dir / mass_name, ms.str());

    emit_manifest(opts, cfg, "uncertainty",
                  {{"out_csv", out_name},
                   {"mass_out_csv", mass_name},
                   {"min_product_over_bound", format_double(min_ratio)}});

    const bool ok = min_ratio >= 1.0 - 1e-3 && mrep.satisfied();
    if (!ok) {
      std::cerr << "uncertainty bound violated: min ratio "
                << min_ratio << "\n";
    }
    return ok ? kExitOk : kExitInvariant;
  });
}

int cmd_causality(const CommonOptions& opts) {
  return run_guarded([&]() {
    ConfigFile cfg = ConfigFile::parse_file(opts.config);
    const ConfigSection& sec = cfg.require_section("causality");

    const int n_t = static_cast<int>(sec.get_int("n_t", 128));
    const int n_x = static_cast<int>(sec.get_int("n_x", 128));
    const SpacetimeGrid grid(n_t, n_x, 1.0, 1.0, -0.5 * n_t, -0.5 * n_x);
    const std::string packet = sec.get_string("packet", "gaussian");

    std::ostringstream os;
    os << "sigma_x,cone_prob\n";
    if (packet == "axis") {
      GridWavefunction psi = GridWavefunction::axis_line(grid, 0.0);
      os << "0," << format_double(causality_probability(psi, 0.0)) << '\n';
    } else if (packet == "point") {
      const double t_off = sec.get_double("t_off", 0.0);
      const double x_off = sec.get_double("x_off", 0.0);
      GridWavefunction psi = GridWavefunction::point(grid, t_off, x_off);
      os << "0," << format_double(causality_probability(psi, 0.0)) << '\n';
    } else if (packet == "gaussian") {
      const double sigma_t = sec.get_double("sigma_t_over_dt", 8.0);
      const double lo = sec.get_double("sigma_x_over_dx_min", 2.0);
      const double hi = sec.get_double("sigma_x_over_dx_max", 16.0);
      const int points = static_cast<int>(sec.get_int("sweep_points", 8));
      for (int s = points - 1; s >= 0; --s) {
        const double sigma_x =
            points == 1 ? lo : lo + (hi - lo) * s / double(points - 1);
        GridWavefunction psi =
            GridWavefunction::gaussian(grid, 0.0, 0.0, sigma_t, sigma_x);
        os << format_double(sigma_x) << ','
           << format_double(causality_probability(psi, 0.0)) << '\n';
      }
    } else {
      throw ConfigError("unknown packet kind '" + packet + "'");
    }

    const std::string out_name = sec.get_string("out_csv", "causality.csv");
    atomic_write_file(opts.out_dir / out_name, os.str());
    emit_manifest(opts, cfg, "causality", {{"out_csv", out_name}});
    return kExitOk;
  });
}

}  // namespace pev::cli
