#include "recordstats/process.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "recordstats/report_io.hpp"

namespace recordstats {

std::string process_kind_name(ProcessKind k) {
  switch (k) {
    case ProcessKind::kIid: return "iid";
    case ProcessKind::kRandomWalk: return "random_walk";
    case ProcessKind::kAr1: return "ar1";
    case ProcessKind::kGarch11: return "garch11";
    case ProcessKind::kArGarch: return "ar_garch";
  }
  throw std::logic_error("unknown process kind");
}

ProcessKind process_kind_from_name(const std::string& name) {
  if (name == "iid") return ProcessKind::kIid;
  if (name == "random_walk" || name == "rw") return ProcessKind::kRandomWalk;
  if (name == "ar1") return ProcessKind::kAr1;
  if (name == "garch11" || name == "garch") return ProcessKind::kGarch11;
  if (name == "ar_garch" || name == "argarch") return ProcessKind::kArGarch;
  throw std::invalid_argument("unknown process kind: " + name);
}

void ProcessConfig::validate() const {
  jump.validate();
  if (!std::isfinite(drift)) throw std::invalid_argument("drift must be finite");
  if (has_ar()) {
    if (!(ar_alpha >= 0.0 && ar_alpha <= 1.0)) {
      throw std::invalid_argument("ar alpha must lie in [0,1]");
    }
  }
  if (has_garch()) {
    if (garch_alpha0 < 0.0 || garch_alpha1 < 0.0 || garch_beta1 < 0.0) {
      throw std::invalid_argument("garch coefficients must be nonnegative");
    }
    if (!(garch_alpha1 + garch_beta1 < 1.0)) {
      throw std::invalid_argument("garch stationarity requires alpha1 + beta1 < 1");
    }
  }
}

double ProcessConfig::stationary_variance() const {
  if (!has_garch()) {
    throw std::invalid_argument("stationary_variance is defined for GARCH kinds only");
  }
  if (!(garch_alpha1 + garch_beta1 < 1.0)) {
    throw std::invalid_argument("garch stationarity requires alpha1 + beta1 < 1");
  }
  return garch_alpha0 / (1.0 - garch_alpha1 - garch_beta1);
}

nlohmann::json ProcessConfig::to_json() const {
  nlohmann::json j{{"kind", process_kind_name(kind)}, {"jump", jump.to_json()}, {"drift", drift}};
  if (has_ar()) j["alpha"] = ar_alpha;
  if (has_garch()) {
    j["alpha0"] = garch_alpha0;
    j["alpha1"] = garch_alpha1;
    j["beta1"] = garch_beta1;
  }
  return j;
}

ProcessConfig ProcessConfig::from_json(const nlohmann::json& j) {
  ProcessConfig cfg;
  cfg.kind = process_kind_from_name(j.at("kind").get<std::string>());
  cfg.jump = DistributionSpec::from_json(j.at("jump"));
  cfg.drift = j.value("drift", 0.0);
  cfg.ar_alpha = j.value("alpha", 1.0);
  cfg.garch_alpha0 = j.value("alpha0", 0.0);
  cfg.garch_alpha1 = j.value("alpha1", 0.0);
  cfg.garch_beta1 = j.value("beta1", 0.0);
  cfg.validate();
  return cfg;
}

void generate_into(const ProcessConfig& config, int n, RandomStream& rng, Trajectory& out) {
  if (n < 1) throw std::invalid_argument("trajectory length n must be >= 1");
  config.validate();

  out.values.resize(static_cast<std::size_t>(n) + 1);
  out.values[0] = 0.0;

  const bool garch = config.has_garch();
  if (garch) {
    out.sigma.resize(static_cast<std::size_t>(n) + 1);
    out.sigma[0] = 0.0;
  } else {
    out.sigma.clear();
  }

  const double c = config.drift;
  const double alpha = config.ar_alpha;
  // Guards against runaway vol for heavy-tailed innovations, where
  // alpha1 * xi^2 has no finite mean; keeps the recursion in finite doubles.
  constexpr double kSigma2Cap = 1e300;

  double sig2 = 0.0;
  if (garch) sig2 = config.stationary_variance();

  double prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double xi = config.jump.sample(rng);
    double increment;
    double sig = 0.0;
    if (garch) {
      sig = std::sqrt(sig2);
      out.sigma[static_cast<std::size_t>(i)] = sig;
      increment = sig * xi;
    } else {
      increment = xi;
    }

    double x;
    switch (config.kind) {
      case ProcessKind::kIid: x = increment + c; break;
      case ProcessKind::kRandomWalk:
      case ProcessKind::kGarch11: x = prev + increment + c; break;
      case ProcessKind::kAr1:
      case ProcessKind::kArGarch: x = alpha * prev + increment + c; break;
      default: throw std::logic_error("unknown process kind");
    }
    out.values[static_cast<std::size_t>(i)] = x;
    prev = x;

    if (garch) {
      const double realized = sig * xi;
      sig2 = config.garch_alpha0 + config.garch_alpha1 * realized * realized +
             config.garch_beta1 * sig2;
      if (sig2 > kSigma2Cap) sig2 = kSigma2Cap;
    }
  }
}

Trajectory generate(const ProcessConfig& config, int n, RandomStream& rng) {
  Trajectory t;
  generate_into(config, n, rng, t);
  return t;
}

void write_trajectory_csv(const Trajectory& t, std::ostream& os) {
  const bool with_sigma = !t.sigma.empty();
  os << (with_sigma ? "step,value,sigma\n" : "step,value\n");
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    os << i << ',' << format_double(t.values[i]);
    if (with_sigma) os << ',' << format_double(t.sigma[i]);
    os << '\n';
  }
}

}  // namespace recordstats
