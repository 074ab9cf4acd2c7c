#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "recordstats/distribution.hpp"
#include "recordstats/rng.hpp"

namespace recordstats {

enum class ProcessKind { kIid, kRandomWalk, kAr1, kGarch11, kArGarch };

std::string process_kind_name(ProcessKind k);
ProcessKind process_kind_from_name(const std::string& name);

// Generative model for a trajectory X_0..X_n with X_0 = 0:
//   iid:         X_i = xi_i + c
//   random_walk: X_i = X_{i-1} + xi_i + c
//   ar1:         X_i = alpha X_{i-1} + xi_i + c
//   garch11:     X_i = X_{i-1} + sigma_i xi_i + c
//   ar_garch:    X_i = alpha X_{i-1} + sigma_i xi_i + c
// with sigma_i^2 = alpha0 + alpha1 (xi_{i-1} sigma_{i-1})^2 + beta1 sigma_{i-1}^2
// for the GARCH kinds, seeded at the stationary value alpha0/(1-alpha1-beta1).
struct ProcessConfig {
  ProcessKind kind = ProcessKind::kRandomWalk;
  DistributionSpec jump;
  double drift = 0.0;
  double ar_alpha = 1.0;
  double garch_alpha0 = 0.0;
  double garch_alpha1 = 0.0;
  double garch_beta1 = 0.0;

  bool has_ar() const { return kind == ProcessKind::kAr1 || kind == ProcessKind::kArGarch; }
  bool has_garch() const { return kind == ProcessKind::kGarch11 || kind == ProcessKind::kArGarch; }

  void validate() const;  // throws std::invalid_argument

  // alpha0/(1-alpha1-beta1); throws unless this is a stationary GARCH kind.
  double stationary_variance() const;

  nlohmann::json to_json() const;
  static ProcessConfig from_json(const nlohmann::json& j);
};

struct Trajectory {
  std::vector<double> values;  // length n+1, values[0] = 0
  std::vector<double> sigma;   // GARCH kinds only: sigma[i] is the vol used at step i

  std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
};

Trajectory generate(const ProcessConfig& config, int n, RandomStream& rng);

// Buffer-reusing variant for hot Monte Carlo loops.
void generate_into(const ProcessConfig& config, int n, RandomStream& rng, Trajectory& out);

void write_trajectory_csv(const Trajectory& t, std::ostream& os);

}  // namespace recordstats
