#include "pev/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pev/io.hpp"

namespace pev {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

bool ConfigSection::has(const std::string& key) const {
  return find(key).has_value();
}

std::optional<std::string> ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return e.value;
  }
  return std::nullopt;
}

std::string ConfigSection::require(const std::string& key) const {
  auto v = find(key);
  if (!v) {
    throw ConfigError("missing key '" + key + "' in section [" + name + "]");
  }
  return *v;
}

std::string ConfigSection::get_string(const std::string& key,
                                      const std::string& fallback) const {
  return find(key).value_or(fallback);
}

std::int64_t ConfigSection::get_int(const std::string& key) const {
  const std::string v = require(key);
  try {
    std::size_t pos = 0;
    const std::int64_t out = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' = '" + v + "' is not an integer");
  }
}

std::int64_t ConfigSection::get_int(const std::string& key,
                                    std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double ConfigSection::get_double(const std::string& key) const {
  const std::string v = require(key);
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' = '" + v + "' is not a number");
  }
}

double ConfigSection::get_double(const std::string& key,
                                 double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool ConfigSection::get_bool(const std::string& key) const {
  const std::string v = require(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "' = '" + v + "' is not a boolean");
}

bool ConfigSection::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

QuantityToken split_quantity(const std::string& raw) {
  const std::string s = trim(raw);
  std::size_t pos = 0;
  QuantityToken out;
  try {
    out.value = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse quantity '" + raw + "'");
  }
  out.unit = trim(s.substr(pos));
  return out;
}

double convert_quantity(const std::string& raw, Dimension dim,
                        const UnitConversions& conv) {
  const QuantityToken q = split_quantity(raw);
  if (q.unit.empty()) {
    throw ConfigError("physical quantity '" + raw +
                      "' is missing a unit suffix");
  }
  switch (dim) {
    case Dimension::Energy:
      if (!is_energy_unit(q.unit)) {
        throw ConfigError("quantity '" + raw + "' must carry an energy unit");
      }
      return quantity_to_ev(q.value, q.unit);
    case Dimension::InverseEnergy:
      if (!is_time_unit(q.unit) && !is_length_unit(q.unit)) {
        throw ConfigError("quantity '" + raw +
                          "' must carry a time or length unit");
      }
      return quantity_to_inv_ev(q.value, q.unit, conv);
  }
  throw ConfigError("unhandled dimension");
}

double ConfigSection::get_quantity(const std::string& key, Dimension dim,
                                   const UnitConversions& conv) const {
  return convert_quantity(require(key), dim, conv);
}

double ConfigSection::get_quantity(const std::string& key, Dimension dim,
                                   double fallback,
                                   const UnitConversions& conv) const {
  return has(key) ? get_quantity(key, dim, conv) : fallback;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path.string());
}

ConfigFile ConfigFile::parse_string(const std::string& content,
                                    const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  cfg.sections_.push_back(ConfigSection{});  // preamble

  std::istringstream is(content);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": malformed section header '" + t + "'");
      }
      ConfigSection sec;
      sec.name = trim(t.substr(1, t.size() - 2));
      cfg.sections_.push_back(std::move(sec));
      continue;
    }

    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected key = value, got '" + t + "'");
    }
    ConfigEntry e;
    e.key = trim(t.substr(0, eq));
    e.value = trim(t.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": empty key");
    }
    cfg.sections_.back().entries.push_back(std::move(e));
  }
  // Drop an empty preamble so serialization round-trips.
  if (cfg.sections_.front().entries.empty() && cfg.sections_.size() > 1) {
    cfg.sections_.erase(cfg.sections_.begin());
  }
  return cfg;
}

const ConfigSection* ConfigFile::find_section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const ConfigSection& ConfigFile::require_section(
    const std::string& name) const {
  const ConfigSection* s = find_section(name);
  if (!s) {
    throw ConfigError(origin_ + ": missing required section [" + name + "]");
  }
  return *s;
}

std::vector<const ConfigSection*> ConfigFile::sections_named(
    const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections_) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  for (auto& s : sections_) {
    if (s.name != section) continue;
    for (auto& e : s.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    s.entries.push_back(ConfigEntry{key, value, 0});
    return;
  }
  ConfigSection sec;
  sec.name = section;
  sec.entries.push_back(ConfigEntry{key, value, 0});
  sections_.push_back(std::move(sec));
}

std::string ConfigFile::serialize() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : sections_) {
    if (!s.name.empty()) {
      if (!first) os << "\n";
      os << "[" << s.name << "]\n";
    }
    first = false;
    for (const auto& e : s.entries) {
      os << e.key << " = " << e.value << "\n";
    }
  }
  return os.str();
}

std::uint64_t ConfigFile::hash() const { return fnv1a64(serialize()); }

}  // namespace pev
