#include "pev/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pev/config.hpp"
#include "pev/version.hpp"

namespace pev {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_operator(std::ostream& os, const Operator& a) {
  const int d = a.dim();
  os << d << '\n';
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j) os << ' ';
      os << format_double(a(i, j).real()) << ',' << format_double(a(i, j).imag());
    }
    os << '\n';
  }
}

namespace {

Complex parse_entry(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos) {
    throw IoError("operator entry '" + token + "' is not of the form re,im");
  }
  try {
    const double re = std::stod(token.substr(0, comma));
    const double im = std::stod(token.substr(comma + 1));
    return Complex(re, im);
  } catch (const std::exception&) {
    throw IoError("cannot parse operator entry '" + token + "'");
  }
}

}  // namespace

Operator read_operator(std::istream& is, int max_dim) {
  int d = 0;
  if (!(is >> d)) {
    throw IoError("missing operator dimension");
  }
  if (d <= 0) {
    throw IoError("operator dimension must be positive, got " +
                  std::to_string(d));
  }
  if (d > max_dim) {
    throw IoError("operator dimension " + std::to_string(d) +
                  " exceeds the configured cap " + std::to_string(max_dim));
  }
  ComplexMatrix m(d, d);
  std::string token;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(is >> token)) {
        throw IoError("truncated operator data at row " + std::to_string(i));
      }
      m(i, j) = parse_entry(token);
    }
  }
  return Operator(std::move(m));
}

void save_operator(const std::filesystem::path& path, const Operator& a) {
  std::ostringstream os;
  write_operator(os, a);
  atomic_write_file(path, os.str());
}

Operator load_operator(const std::filesystem::path& path, int max_dim) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open operator file " + path.string());
  }
  return read_operator(is, max_dim);
}

namespace {

Operator parse_inline_branch(const std::string& body, int max_dim) {
  // "<dim> ; re,im re,im ; re,im re,im"
  std::string flat = body;
  for (char& c : flat) {
    if (c == ';') c = ' ';
  }
  std::istringstream is(flat);
  return read_operator(is, max_dim);
}

}  // namespace

ChannelFamily load_family(const std::filesystem::path& path, int max_dim) {
  ConfigFile cfg = ConfigFile::parse_file(path);
  ChannelFamily family;
  bool saw_family_section = false;

  for (const ConfigSection& sec : cfg.sections()) {
    if (sec.name == "family") {
      saw_family_section = true;
      family.kind = family_kind_from_string(sec.require("kind"));
      if (sec.has("step")) family.step = static_cast<int>(sec.get_int("step"));
      if (sec.has("probability_conserving")) {
        family.probability_conserving = sec.get_bool("probability_conserving");
      }
    } else if (sec.name == "channel") {
      Channel ch;
      ch.label = sec.require("nu");
      for (const auto& kv : sec.entries) {
        if (kv.key != "branch") continue;
        std::istringstream head(kv.value);
        std::string mode;
        head >> mode;
        if (mode == "inline") {
          std::string rest;
          std::getline(head, rest);
          ch.branches.push_back(parse_inline_branch(rest, max_dim));
        } else if (mode == "file") {
          std::string rel;
          head >> rel;
          if (rel.empty()) {
            throw ConfigError("branch file entry without a path in " +
                              path.string());
          }
          ch.branches.push_back(
              load_operator(path.parent_path() / rel, max_dim));
        } else {
          throw ConfigError("branch must start with 'inline' or 'file', got '" +
                            mode + "'");
        }
      }
      if (ch.branches.empty()) {
        throw ConfigError("channel '" + ch.label + "' in " + path.string() +
                          " has no branch entries");
      }
      family.channels.push_back(std::move(ch));
    } else if (!sec.name.empty()) {
      throw ConfigError("unknown section [" + sec.name + "] in family file " +
                        path.string());
    }
  }
  if (!saw_family_section) {
    throw ConfigError("family file " + path.string() +
                      " is missing the [family] section");
  }
  if (family.channels.empty()) {
    throw ConfigError("family file " + path.string() + " defines no channels");
  }
  if (family.kind != FamilyKind::General) {
    family.probability_conserving = true;
  }
  return family;
}

void save_family(const std::filesystem::path& path, const ChannelFamily& f) {
  std::ostringstream os;
  os << "[family]\n";
  os << "kind = " << to_string(f.kind) << "\n";
  os << "step = " << f.step << "\n";
  if (f.kind == FamilyKind::General) {
    os << "probability_conserving = "
       << (f.probability_conserving ? "true" : "false") << "\n";
  }
  for (const Channel& ch : f.channels) {
    os << "\n[channel]\n";
    os << "nu = " << ch.label << "\n";
    for (const Operator& e : ch.branches) {
      os << "branch = inline " << e.dim();
      for (int i = 0; i < e.dim(); ++i) {
        os << " ;";
        for (int j = 0; j < e.dim(); ++j) {
          os << ' ' << format_double(e(i, j).real()) << ','
             << format_double(e(i, j).imag());
        }
      }
      os << "\n";
    }
  }
  atomic_write_file(path, os.str());
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  fs::path tmp = dir / (path.filename().string() + ".tmp." +
                        std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    os << content;
    os.flush();
    if (!os) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestEntry>& entries) {
  std::ostringstream os;
  os << "pev_version = " << kVersion << "\n";
  for (const auto& e : entries) {
    os << e.key << " = " << e.value << "\n";
  }
  atomic_write_file(path, os.str());
}

}  // namespace pev
