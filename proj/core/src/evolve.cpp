#include "pev/evolve.hpp"

#include <ostream>

#include "pev/io.hpp"
#include "pev/rng.hpp"

namespace pev {

std::vector<double> chooser_weights(const ChannelFamily& family,
                                    const DensityOperator& rho) {
  std::vector<double> w;
  w.reserve(family.channels.size());
  double total = 0.0;
  for (const Channel& ch : family.channels) {
    double p = transition_prob(ch, rho);
    if (p < 0.0) p = 0.0;  // clip roundoff noise
    w.push_back(p);
    total += p;
  }
  if (total > 0.0) {
    for (double& x : w) x /= total;
  }
  return w;
}

PathRecord sample_path(const std::vector<ChannelFamily>& families,
                       const DensityOperator& rho0, std::uint64_t seed,
                       const SamplingOptions& opts) {
  PathRecord record;
  record.seed = seed;
  record.steps.reserve(families.size());

  RandomStream rng(seed);
  DensityOperator rho = rho0;
  for (const ChannelFamily& family : families) {
    if (family.channels.empty()) {
      throw Error("sample_path: family at step " +
                  std::to_string(family.step) + " has no channels");
    }
    std::vector<double> weights;
    weights.reserve(family.channels.size());
    double total = 0.0;
    for (const Channel& ch : family.channels) {
      double p = transition_prob(ch, rho);
      if (p < 0.0) p = 0.0;
      weights.push_back(p);
      total += p;
    }
    if (total <= opts.zero_prob_tol) {
      throw AllBranchesZero("sample_path: no branch has positive weight at step " +
                            std::to_string(family.step));
    }
    const std::size_t pick = rng.choose(weights);
    const Channel& chosen = family.channels[pick];
    rho = luders_update(chosen, rho, opts.zero_prob_tol);
    if (opts.validate_states) {
      DensityDiagnostics d = check_density(rho.op());
      if (!d.ok()) {
        throw InvalidDensity("sample_path produced an invalid state:\n" +
                             d.to_text());
      }
    }
    record.steps.push_back(
        PathStep{family.step, chosen.label, weights[pick] / total, rho});
  }
  return record;
}

void write_path_csv(std::ostream& os, const PathRecord& path) {
  os << "tau,nu,pev,purity,entropy\n";
  for (const PathStep& s : path.steps) {
    os << s.tau << ',' << s.nu << ',' << format_double(s.pev) << ','
       << format_double(purity(s.state)) << ','
       << format_double(von_neumann_entropy(s.state)) << '\n';
  }
}

BranchFrequencies aggregate_paths(const std::vector<ChannelFamily>& families,
                                  const DensityOperator& rho0,
                                  std::uint64_t seed, std::int64_t n_paths,
                                  const SamplingOptions& opts) {
  BranchFrequencies out;
  out.paths = n_paths;
  out.steps.reserve(families.size());
  for (const ChannelFamily& family : families) {
    BranchFrequencies::StepCounts sc;
    sc.tau = family.step;
    for (const Channel& ch : family.channels) sc.labels.push_back(ch.label);
    sc.counts.assign(family.channels.size(), 0);
    out.steps.push_back(std::move(sc));
  }

  RandomStream root(seed);
  for (std::int64_t i = 0; i < n_paths; ++i) {
    PathRecord path =
        sample_path(families, rho0, root.substream(static_cast<std::uint64_t>(i)).seed(), opts);
    for (std::size_t t = 0; t < path.steps.size(); ++t) {
      const auto& labels = out.steps[t].labels;
      for (std::size_t c = 0; c < labels.size(); ++c) {
        if (labels[c] == path.steps[t].nu) {
          ++out.steps[t].counts[c];
          break;
        }
      }
    }
  }
  return out;
}

void write_frequency_csv(std::ostream& os, const BranchFrequencies& freq) {
  os << "tau,nu,count,frequency\n";
  for (const auto& step : freq.steps) {
    for (std::size_t c = 0; c < step.labels.size(); ++c) {
      const double f =
          freq.paths > 0 ? static_cast<double>(step.counts[c]) / freq.paths : 0.0;
      os << step.tau << ',' << step.labels[c] << ',' << step.counts[c] << ','
         << format_double(f) << '\n';
    }
  }
}

}  // namespace pev
