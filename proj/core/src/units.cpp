#include "pev/units.hpp"

#include "pev/errors.hpp"

namespace pev {

bool is_energy_unit(const std::string& u) {
  return u == "eV" || u == "keV" || u == "MeV" || u == "GeV";
}

bool is_time_unit(const std::string& u) {
  return u == "s" || u == "ms" || u == "us" || u == "ns" || u == "ps" ||
         u == "fs" || u == "as";
}

bool is_length_unit(const std::string& u) {
  return u == "m" || u == "mm" || u == "um" || u == "nm";
}

double energy_unit_to_ev(const std::string& u) {
  if (u == "eV") return 1.0;
  if (u == "keV") return 1e3;
  if (u == "MeV") return 1e6;
  if (u == "GeV") return 1e9;
  throw ConfigError("unknown energy unit '" + u + "'");
}

double time_unit_to_seconds(const std::string& u) {
  if (u == "s") return 1.0;
  if (u == "ms") return 1e-3;
  if (u == "us") return 1e-6;
  if (u == "ns") return 1e-9;
  if (u == "ps") return 1e-12;
  if (u == "fs") return 1e-15;
  if (u == "as") return 1e-18;
  throw ConfigError("unknown time unit '" + u + "'");
}

double length_unit_to_meters(const std::string& u) {
  if (u == "m") return 1.0;
  if (u == "mm") return 1e-3;
  if (u == "um") return 1e-6;
  if (u == "nm") return 1e-9;
  throw ConfigError("unknown length unit '" + u + "'");
}

double quantity_to_ev(double value, const std::string& unit) {
  return value * energy_unit_to_ev(unit);
}

double quantity_to_inv_ev(double value, const std::string& unit,
                          const UnitConversions& conv) {
  if (is_time_unit(unit)) {
    return value * time_unit_to_seconds(unit) * conv.seconds_to_inv_ev;
  }
  if (is_length_unit(unit)) {
    return value * length_unit_to_meters(unit) * conv.meters_to_inv_ev;
  }
  throw ConfigError("unit '" + unit + "' is neither a time nor a length");
}

}  // namespace pev
