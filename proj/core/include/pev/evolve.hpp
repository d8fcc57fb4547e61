#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pev/channel.hpp"
#include "pev/operator.hpp"

namespace pev {

struct PathStep {
  int tau = 0;
  std::string nu;     // label of the chosen channel
  double pev = 0.0;   // normalized chooser weight of the chosen branch
  DensityOperator state;
};

struct PathRecord {
  std::uint64_t seed = 0;
  std::vector<PathStep> steps;
};

struct SamplingOptions {
  double zero_prob_tol = 1e-12;
  /// When set, states are validated after every update (slower).
  bool validate_states = false;
};

/// Walks the ordered family list once. At each step the chooser draws a
/// channel nu with probability transition_prob(nu, rho) normalized over the
/// family, then applies the Lüders update. Deterministic given the seed.
/// Throws AllBranchesZero when no branch of a step has positive weight.
PathRecord sample_path(const std::vector<ChannelFamily>& families,
                       const DensityOperator& rho0, std::uint64_t seed,
                       const SamplingOptions& opts = {});

/// Chooser weights for one family, normalized to sum 1.
std::vector<double> chooser_weights(const ChannelFamily& family,
                                    const DensityOperator& rho);

/// CSV with header tau,nu,pev,purity,entropy.
void write_path_csv(std::ostream& os, const PathRecord& path);

/// Branch visit counts per (tau, nu) aggregated over many seeded paths;
/// substream i of the root seed drives path i.
struct BranchFrequencies {
  struct StepCounts {
    int tau = 0;
    std::vector<std::string> labels;
    std::vector<std::int64_t> counts;
  };
  std::vector<StepCounts> steps;
  std::int64_t paths = 0;
};

BranchFrequencies aggregate_paths(const std::vector<ChannelFamily>& families,
                                  const DensityOperator& rho0,
                                  std::uint64_t seed, std::int64_t n_paths,
                                  const SamplingOptions& opts = {});

void write_frequency_csv(std::ostream& os, const BranchFrequencies& freq);

}  // namespace pev
