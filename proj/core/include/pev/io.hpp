#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pev/channel.hpp"
#include "pev/operator.hpp"

namespace pev {

/// 17-significant-digit scientific form, stable across runs for regression
/// comparison of emitted CSVs.
std::string format_double(double x);

/// Plain-text operator format: first line `dim`, then dim lines of dim
/// whitespace-separated `re,im` pairs.
void write_operator(std::ostream& os, const Operator& a);
Operator read_operator(std::istream& is, int max_dim = kDefaultFileDimCap);

void save_operator(const std::filesystem::path& path, const Operator& a);
Operator load_operator(const std::filesystem::path& path,
                       int max_dim = kDefaultFileDimCap);

/// Channel family text format. Line oriented:
///
///   [family]
///   kind = orthogonal-resolution | unitary | general
///   probability_conserving = true        # optional, kind general
///   step = 0                             # optional
///   [channel]
///   nu = <label>
///   branch = inline <dim> ; re,im re,im ; re,im re,im
///   branch = file <relative-path>
///
/// A channel may list several `branch =` lines. File paths resolve
/// relative to the family file's directory.
ChannelFamily load_family(const std::filesystem::path& path,
                          int max_dim = kDefaultFileDimCap);
void save_family(const std::filesystem::path& path, const ChannelFamily& f);

/// Writes via a temp file in the same directory followed by rename, so
/// readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

/// FNV-1a 64-bit, used to fingerprint configs in manifests.
std::uint64_t fnv1a64(const std::string& data);

struct ManifestEntry {
  std::string key;
  std::string value;
};

/// key = value manifest including code version, config hash and unit
/// factors; written atomically.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestEntry>& entries);

}  // namespace pev
