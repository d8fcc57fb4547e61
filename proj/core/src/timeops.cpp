#include "pev/timeops.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pev/generators.hpp"
#include "pev/io.hpp"

namespace pev {

Operator time_operator(const SpacetimeGrid& grid) {
  return position_operator(grid, 0);
}

std::string RobertsonReport::to_text() const {
  std::ostringstream os;
  os << "var_a = " << var_a << "\n"
     << "var_b = " << var_b << "\n"
     << "product = " << product << "\n"
     << "bound = " << bound << "\n"
     << "commutator_expectation = " << commutator_expectation << "\n"
     << "satisfied = " << (satisfied() ? "true" : "false") << "\n";
  return os.str();
}

RobertsonReport robertson_check(const Operator& a, const Operator& b,
                                const GridWavefunction& psi) {
  if (!a.is_hermitian() || !b.is_hermitian()) {
    throw NotHermitian("robertson_check requires hermitian operators");
  }
  RobertsonReport rep;
  rep.var_a = variance(a, psi);
  rep.var_b = variance(b, psi);
  rep.product = rep.var_a * rep.var_b;

  // <i[A,B]> = i(<Apsi|Bpsi> - <Bpsi|Apsi>) = -2 Im <Apsi|Bpsi>.
  const double w = psi.cell_weight();
  const ComplexVector av = a.matrix() * psi.amplitudes();
  const ComplexVector bv = b.matrix() * psi.amplitudes();
  rep.commutator_expectation = -2.0 * (av.dot(bv)).imag() * w;
  rep.bound =
      0.25 * rep.commutator_expectation * rep.commutator_expectation;
  return rep;
}

std::string MassUncertaintyReport::to_text() const {
  auto side = [](const char* name, const Side& s) {
    std::ostringstream os;
    os << name << ".var_m2 = " << s.var_m2 << "\n"
       << name << ".var_x = " << s.var_x << "\n"
       << name << ".lhs = " << s.lhs << "\n"
       << name << ".rhs = " << s.rhs << "\n"
       << name << ".slack = " << s.slack << "\n";
    return os.str();
  };
  return side("nu0", nu0) + side("nu1", nu1);
}

MassUncertaintyReport mass_uncertainty_check(const GridWavefunction& psi) {
  const SpacetimeGrid& g = psi.grid();
  const double w = g.dt * g.dx;

  // m^2 psi = (p0^2 - p1^2) psi via spectral momentum applications.
  const ComplexVector p0v = psi.apply_p(0);
  const ComplexVector p1v = psi.apply_p(1);
  const ComplexVector p00 = apply_axis_momentum(g, p0v, 0);
  const ComplexVector p11 = apply_axis_momentum(g, p1v, 1);
  const ComplexVector m2v = p00 - p11;

  const ComplexVector& amp = psi.amplitudes();
  const double mean_m2 = (amp.dot(m2v)).real() * w;
  const double second_m2 = m2v.squaredNorm() * w;
  const double var_m2 = second_m2 - mean_m2 * mean_m2;

  MassUncertaintyReport rep;
  for (int nu = 0; nu <= 1; ++nu) {
    ComplexVector xv = psi.apply_position(nu);
    const double mean_x = (amp.dot(xv)).real() * w;
    const double second_x = xv.squaredNorm() * w;
    const double var_x = second_x - mean_x * mean_x;

    ComplexVector pv = (nu == 0) ? p0v : p1v;
    double mean_p = (amp.dot(pv)).real() * w;
    // Contravariant component: p^1 = -p_1 with metric (+,-). Squared below,
    // so the sign does not change the bound; kept for the report.
    if (nu == 1) mean_p = -mean_p;

    MassUncertaintyReport::Side s;
    s.var_m2 = var_m2;
    s.var_x = var_x;
    s.lhs = var_m2 * var_x;
    s.rhs = mean_p * mean_p;
    s.slack = s.lhs - s.rhs;
    if (nu == 0) {
      rep.nu0 = s;
    } else {
      rep.nu1 = s;
    }
  }
  return rep;
}

double causality_probability(const GridWavefunction& psi, double vertex_t) {
  const SpacetimeGrid& g = psi.grid();
  if (vertex_t < g.t0 - 0.5 * g.dt ||
      vertex_t > g.t(g.n_t - 1) + 0.5 * g.dt) {
    throw Error("causality vertex outside the grid span");
  }
  return psi.weight_where([vertex_t](double t, double x) {
    const double dt = t - vertex_t;
    return dt * dt - x * x >= 0.0;
  });
}

void write_wavefunction_csv(std::ostream& os, const GridWavefunction& psi) {
  os << "t,x,re,im\n";
  const SpacetimeGrid& g = psi.grid();
  for (int i = 0; i < g.n_t; ++i) {
    for (int j = 0; j < g.n_x; ++j) {
      const Complex a = psi.at(i, j);
      os << format_double(g.t(i)) << ',' << format_double(g.x(j)) << ','
         << format_double(a.real()) << ',' << format_double(a.imag()) << '\n';
    }
  }
}

GridWavefunction read_wavefunction_csv(std::istream& is,
                                       const SpacetimeGrid& grid) {
  std::string line;
  if (!std::getline(is, line)) {
    throw IoError("empty wavefunction csv");
  }
  ComplexVector amp(grid.dim());
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid.dim()) {
      throw IoError("wavefunction csv has more rows than grid nodes");
    }
    std::istringstream ls(line);
    std::string tok;
    double vals[4] = {0, 0, 0, 0};
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ls, tok, ',')) {
        throw IoError("wavefunction csv row with fewer than 4 columns");
      }
      vals[c] = std::stod(tok);
    }
    amp(row) = Complex(vals[2], vals[3]);
    ++row;
  }
  if (row != grid.dim()) {
    throw IoError("wavefunction csv row count does not match the grid");
  }
  return GridWavefunction(grid, std::move(amp));
}

void save_wavefunction(const std::filesystem::path& path,
                       const GridWavefunction& psi) {
  std::ostringstream os;
  write_wavefunction_csv(os, psi);
  atomic_write_file(path, os.str());
}

}  // namespace pev
