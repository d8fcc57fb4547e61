#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pev::cli {

/// Exit code contract: 0 success, 2 config error, 3 numeric failure,
/// 4 invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitInvariant = 4;

struct CommonOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tolerance_overrides;  // NAME=VALUE
};

struct DoubleslitOptions {
  std::string factor;     // empty = config / full
  std::string epsilon_t;  // suffixed quantity, empty = config value
};

int cmd_validate(const CommonOptions& opts);
int cmd_evolve(const CommonOptions& opts);
int cmd_doubleslit(const CommonOptions& opts, const DoubleslitOptions& ds);
int cmd_uncertainty(const CommonOptions& opts);
int cmd_causality(const CommonOptions& opts);

}  // namespace pev::cli
