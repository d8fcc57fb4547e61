#pragma once

#include <string>

namespace pev {

/// Natural-unit conversion factors (hbar = c = 1). Values documented to
/// five significant figures; derived from hbar = 6.5821e-16 eV s and
/// hbar c = 197.33 MeV fm.
struct UnitConversions {
  double seconds_to_inv_ev = 1.51927e15;
  double meters_to_inv_ev = 5.06773e6;
};

bool is_energy_unit(const std::string& unit);
bool is_time_unit(const std::string& unit);
bool is_length_unit(const std::string& unit);

/// Multiplier taking a value in `unit` to eV. Throws ConfigError for
/// unknown units.
double energy_unit_to_ev(const std::string& unit);

/// Multiplier taking a value in `unit` to seconds / meters.
double time_unit_to_seconds(const std::string& unit);
double length_unit_to_meters(const std::string& unit);

/// Converts `value unit` to eV (energies) or eV^-1 (times and lengths).
double quantity_to_ev(double value, const std::string& unit);
double quantity_to_inv_ev(double value, const std::string& unit,
                          const UnitConversions& conv = {});

}  // namespace pev
