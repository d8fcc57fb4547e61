#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pev/errors.hpp"
#include "pev/units.hpp"

namespace pev {

/// Target dimension of a physical quantity in the config.
enum class Dimension {
  Energy,         // eV; masses and momenta
  InverseEnergy,  // eV^-1; times and lengths in natural units
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;  // empty for the preamble before the first header
  std::vector<ConfigEntry> entries;

  bool has(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;
  /// Throws ConfigError when the key is absent.
  std::string require(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Parses `<number> <unit>` (the space is optional) and converts to eV or
  /// eV^-1. A missing or dimensionally wrong unit suffix is a ConfigError:
  /// physical quantities must always be suffixed.
  double get_quantity(const std::string& key, Dimension dim,
                      const UnitConversions& conv = {}) const;
  double get_quantity(const std::string& key, Dimension dim, double fallback,
                      const UnitConversions& conv = {}) const;
};

/// Splits a raw token such as "1e-7s" or "0.01 mm" into number and unit.
/// The unit may be empty.
struct QuantityToken {
  double value = 0.0;
  std::string unit;
};
QuantityToken split_quantity(const std::string& raw);

/// Converts a suffixed quantity token to the requested dimension.
double convert_quantity(const std::string& raw, Dimension dim,
                        const UnitConversions& conv = {});

/// Line-oriented `key = value` file with `[section]` headers. `#` starts a
/// comment. Section order and key order are preserved, so
/// parse -> serialize -> parse is the identity.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_string(const std::string& content,
                                 const std::string& origin = "<string>");

  const std::vector<ConfigSection>& sections() const { return sections_; }
  const ConfigSection* find_section(const std::string& name) const;
  const ConfigSection& require_section(const std::string& name) const;
  std::vector<const ConfigSection*> sections_named(
      const std::string& name) const;

  /// Applies a NAME=VALUE override; NAME may be section.key or key (applied
  /// to the preamble section).
  void set(const std::string& section, const std::string& key,
           const std::string& value);

  std::string serialize() const;
  std::uint64_t hash() const;

  const std::string& origin() const { return origin_; }

 private:
  std::vector<ConfigSection> sections_;
  std::string origin_;
};

}  // namespace pev
