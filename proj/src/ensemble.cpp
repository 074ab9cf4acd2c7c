#include "recordstats/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "recordstats/parallel.hpp"

namespace recordstats {

namespace {

// Shared accumulation of one ensemble-maximum replica given the N series
// values at each step. `step_values(i, j)` returns series j at step i.
template <typename StepValues>
void accumulate_max_records(int ensemble_size, int steps, const StepValues& step_values,
                            std::vector<std::uint64_t>& record_counts,
                            std::uint64_t& end_records) {
  double running_max = 0.0;
  bool first = true;
  record_counts[0] += 1;  // index-0 convention
  for (int i = 0; i <= steps; ++i) {
    double m = step_values(i, 0);
    for (int j = 1; j < ensemble_size; ++j) m = std::max(m, step_values(i, j));
    if (first) {
      running_max = m;
      first = false;
      continue;
    }
    if (m > running_max) {
      running_max = m;
      record_counts[static_cast<std::size_t>(i)] += 1;
      if (i == steps) ++end_records;
    }
  }
}

EnsembleCurve finalize_curve(int ensemble_size, const std::vector<std::uint64_t>& record_counts,
                             std::uint64_t end_records, std::uint64_t replicas) {
  EnsembleCurve c;
  c.ensemble_size = ensemble_size;
  c.replicas = replicas;
  c.mean_records.resize(record_counts.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < record_counts.size(); ++i) {
    acc += static_cast<double>(record_counts[i]) / static_cast<double>(replicas);
    c.mean_records[i] = acc;
  }
  const double p = static_cast<double>(end_records) / static_cast<double>(replicas);
  c.end_rate = p;
  c.end_rate_stderr = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(replicas));
  return c;
}

}  // namespace

EnsembleCurve ensemble_max_records_sim(const ProcessConfig& process, int ensemble_size, int steps,
                                       std::uint64_t replicas, std::uint64_t master_seed,
                                       unsigned workers) {
  process.validate();
  if (ensemble_size < 1) throw std::invalid_argument("ensemble size must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");

  const unsigned nworkers = resolve_workers(workers);
  struct Partial {
    std::vector<std::uint64_t> counts;
    std::uint64_t end_records = 0;
  };
  std::vector<Partial> partials(nworkers);
  for (auto& p : partials) p.counts.assign(static_cast<std::size_t>(steps) + 1, 0);

  parallel_chunks(replicas, nworkers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partials[w];
    std::vector<Trajectory> walkers(static_cast<std::size_t>(ensemble_size));
    for (std::uint64_t r = begin; r < end; ++r) {
      RandomStream rng = RandomStream::substream(master_seed, r);
      for (auto& t : walkers) generate_into(process, steps, rng, t);
      accumulate_max_records(
          ensemble_size, steps,
          [&](int i, int j) {
            return walkers[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(i)];
          },
          part.counts, part.end_records);
    }
  });

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(steps) + 1, 0);
  std::uint64_t end_records = 0;
  for (const auto& p : partials) {
    end_records += p.end_records;
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += p.counts[i];
  }
  return finalize_curve(ensemble_size, counts, end_records, replicas);
}

EnsembleCurve ensemble_max_records_panel(const std::vector<std::vector<double>>& series,
                                         int ensemble_size, int interval_len, int subset_draws,
                                         std::uint64_t seed) {
  if (series.empty()) throw std::invalid_argument("ensemble: empty panel");
  if (ensemble_size < 1 || static_cast<std::size_t>(ensemble_size) > series.size()) {
    throw std::invalid_argument("ensemble size exceeds panel width");
  }
  if (subset_draws < 1) throw std::invalid_argument("subset_draws must be >= 1");
  const std::size_t total_days = series.front().size();
  for (const auto& s : series) {
    if (s.size() != total_days) throw std::invalid_argument("ensemble: ragged panel");
  }
  if (interval_len < 1 || static_cast<std::size_t>(interval_len) + 1 > total_days) {
    throw std::invalid_argument("interval length exceeds series length");
  }
  const int steps = interval_len;
  const std::size_t intervals = (total_days - 1) / static_cast<std::size_t>(interval_len);

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(steps) + 1, 0);
  std::uint64_t end_records = 0;
  std::uint64_t replicas = 0;

  RandomStream rng(seed);
  std::vector<std::size_t> pick(series.size());
  for (std::size_t d = 0; d < static_cast<std::size_t>(subset_draws); ++d) {
    // Partial Fisher-Yates draw of `ensemble_size` distinct series.
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (int j = 0; j < ensemble_size; ++j) {
      const std::size_t remaining = pick.size() - static_cast<std::size_t>(j);
      const std::size_t k =
          static_cast<std::size_t>(j) + static_cast<std::size_t>(rng.u01() * static_cast<double>(remaining));
      std::swap(pick[static_cast<std::size_t>(j)], pick[std::min(k, pick.size() - 1)]);
    }
    for (std::size_t iv = 0; iv < intervals; ++iv) {
      const std::size_t base = iv * static_cast<std::size_t>(interval_len);
      accumulate_max_records(
          ensemble_size, steps,
          [&](int i, int j) {
            const auto& s = series[pick[static_cast<std::size_t>(j)]];
            return s[base + static_cast<std::size_t>(i)] - s[base];
          },
          counts, end_records);
      ++replicas;
    }
  }
  return finalize_curve(ensemble_size, counts, end_records, replicas);
}

double CollapseReport::max_spread_from(std::size_t min_step) const {
  double worst = 0.0;
  for (std::size_t i = min_step; i < spread.size(); ++i) worst = std::max(worst, spread[i]);
  return worst;
}

CollapseReport collapse_report(const std::map<int, std::vector<double>>& mean_curves_by_size) {
  CollapseReport out;
  std::size_t len = 0;
  for (const auto& [n_series, curve] : mean_curves_by_size) {
    if (n_series < 2) {
      out.warnings.push_back("ensemble size " + std::to_string(n_series) +
                             " excluded from collapse (ln 1 = 0)");
      continue;
    }
    if (len == 0) len = curve.size();
    if (curve.size() != len) throw std::invalid_argument("collapse: curve lengths differ");
    const double norm = std::sqrt(std::log(static_cast<double>(n_series)));
    out.ensemble_sizes.push_back(n_series);
    out.normalized.emplace_back(curve.size());
    auto& dst = out.normalized.back();
    for (std::size_t i = 0; i < curve.size(); ++i) dst[i] = curve[i] / norm;
  }
  if (out.ensemble_sizes.size() < 2) {
    throw std::invalid_argument("collapse_report: need >= 2 ensemble sizes with N >= 2");
  }
  out.spread.assign(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    double lo = out.normalized[0][i], hi = lo, sum = 0.0;
    for (const auto& curve : out.normalized) {
      lo = std::min(lo, curve[i]);
      hi = std::max(hi, curve[i]);
      sum += curve[i];
    }
    const double mean = sum / static_cast<double>(out.normalized.size());
    out.spread[i] = mean != 0.0 ? (hi - lo) / mean : 0.0;
  }
  return out;
}

EffectiveGamma effective_gamma(double data_rate, std::int64_t n, std::int64_t N) {
  if (!(data_rate > 0.0)) throw std::invalid_argument("effective_gamma: rate must be > 0");
  if (n < 1) throw std::invalid_argument("effective_gamma: n must be >= 1");
  if (N < 2) throw std::invalid_argument("effective_gamma: N must be >= 2");
  const double ln_n_series = std::log(static_cast<double>(N));
  EffectiveGamma g;
  g.gamma = static_cast<double>(n) * data_rate * data_rate / ln_n_series;
  g.gamma_prefactor = data_rate / std::sqrt(ln_n_series / static_cast<double>(n));
  return g;
}

}  // namespace recordstats
