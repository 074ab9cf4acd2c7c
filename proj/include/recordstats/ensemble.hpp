#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recordstats/process.hpp"

namespace recordstats {

// Record statistics of the running maximum of N series: a record happens at
// step i when some series strictly exceeds the historical maximum over all
// series and all earlier steps. Step 0 counts as the initial record.
struct EnsembleCurve {
  int ensemble_size = 0;
  std::vector<double> mean_records;  // per step 0..n
  double end_rate = 0.0;             // record rate at the final step
  double end_rate_stderr = 0.0;
  std::uint64_t replicas = 0;
};

// Simulation source: each replica draws N independent trajectories.
EnsembleCurve ensemble_max_records_sim(const ProcessConfig& process, int ensemble_size, int steps,
                                       std::uint64_t replicas, std::uint64_t master_seed,
                                       unsigned workers = 0);

// Data source: random subsets of size N of the given series. Each series is
// split into consecutive intervals of `interval_len` steps, each interval
// re-anchored at zero; every (interval, subset draw) pair is one replica.
EnsembleCurve ensemble_max_records_panel(const std::vector<std::vector<double>>& series,
                                         int ensemble_size, int interval_len, int subset_draws,
                                         std::uint64_t seed);

// Collapse diagnostic: mean record curves divided by sqrt(ln N). N = 1 input
// is excluded with a warning; fewer than two usable curves is an error.
struct CollapseReport {
  std::vector<int> ensemble_sizes;
  std::vector<std::vector<double>> normalized;  // [size][step]
  std::vector<double> spread;  // per step: (max - min)/mean over sizes
  std::vector<std::string> warnings;

  double max_spread_from(std::size_t min_step) const;
};

CollapseReport collapse_report(const std::map<int, std::vector<double>>& mean_curves_by_size);

// Effective-independence exponent: gamma such that the observed rate equals
// the rate of N^gamma independent walkers, i.e. gamma = n rate^2 / ln N.
// `gamma_prefactor` is the alternative reading (observed rate divided by the
// independent-walker rate).
struct EffectiveGamma {
  double gamma = 0.0;
  double gamma_prefactor = 0.0;
};

EffectiveGamma effective_gamma(double data_rate, std::int64_t n, std::int64_t N);

}  // namespace recordstats
