#include "recordstats/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "recordstats/special.hpp"

namespace recordstats::analytics {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
}  // namespace

double iid_rate(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("iid_rate: n must be >= 0");
  return 1.0 / static_cast<double>(n + 1);
}

double iid_mean_records(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("iid_mean_records: n must be >= 0");
  return harmonic_number(n + 1);
}

double rw_rate_exact(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rw_rate_exact: n must be >= 0");
  if (n == 0) return 1.0;
  // C(2n,n) 4^{-n}; log-gamma keeps this finite well past n ~ 500.
  return std::exp(log_binomial(2 * n, n) - 2.0 * static_cast<double>(n) * std::log(2.0));
}

double rw_rate_asymptotic(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("rw_rate_asymptotic: n must be >= 1");
  return 1.0 / std::sqrt(kPi * static_cast<double>(n));
}

double rw_mean_records_exact(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rw_mean_records_exact: n must be >= 0");
  // Q_k = Q_{k-1} (2k-1)/(2k) avoids n lgamma calls.
  double q = 1.0;
  double sum = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    q *= (2.0 * k - 1.0) / (2.0 * k);
    sum += q;
  }
  return sum;
}

double rw_mean_records_asymptotic(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rw_mean_records_asymptotic: n must be >= 0");
  return std::sqrt(4.0 * static_cast<double>(n) / kPi);
}

BiasedSmallDrift biased_small_drift(std::int64_t n, double c, double sigma, Direction d) {
  if (n < 1) throw std::invalid_argument("biased_small_drift: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("biased_small_drift: sigma must be > 0");
  const double sign = d == Direction::kUpper ? 1.0 : -1.0;
  const double nd = static_cast<double>(n);
  BiasedSmallDrift out;
  out.validity_ratio = std::fabs(c) * std::sqrt(nd) / sigma;
  out.valid = out.validity_ratio <= 0.5;
  out.rate = 1.0 / std::sqrt(kPi * nd) + sign * c / (kSqrt2 * sigma);
  out.rate_arctan =
      1.0 / std::sqrt(kPi * nd) + sign * (c / sigma) * (kSqrt2 / kPi) * std::atan(std::sqrt(nd));
  out.mean_records = 2.0 * std::sqrt(nd / kPi) + sign * c * nd / (kSqrt2 * sigma);
  return out;
}

double biased_mean_records_erfc_sum(std::int64_t n, double c, double sigma) {
  if (n < 1) throw std::invalid_argument("erfc sum: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("erfc sum: sigma must be > 0");
  if (!(c > 0.0)) {
    throw std::invalid_argument("erfc sum: requires c > 0 (series diverges at c = 0)");
  }
  const double ratio = c / (sigma * kSqrt2);
  double sum = 0.0;
  for (std::int64_t k = 1; k <= 1'000'000; ++k) {
    const double term = std::erfc(ratio * std::sqrt(static_cast<double>(k))) / (2.0 * k);
    sum += term;
    if (term < 1e-12 * sum) break;
  }
  return static_cast<double>(n) * std::exp(-sum);
}

double ar1_rate_conjecture(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("ar1_rate_conjecture: n must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0,1]");
  const double nd = static_cast<double>(n);
  return std::exp(-nd * (1.0 - alpha) / kPi) / std::sqrt(kPi * nd);
}

double ar1_mean_records_conjecture(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("ar1_mean_records_conjecture: n must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0,1]");
  const double nd = static_cast<double>(n);
  return 2.0 * std::sqrt(nd) / kPi * std::exp(-nd * (1.0 - alpha) / kPi);
}

double ar1_mean_records_conjecture_consistent(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("ar1_mean_records_conjecture: n must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0,1]");
  const double nd = static_cast<double>(n);
  return 2.0 * std::sqrt(nd / kPi) * std::exp(-nd * (1.0 - alpha) / kPi);
}

double ensemble_mean_records(std::int64_t n, std::int64_t N) {
  if (n < 1 || N < 1) throw std::invalid_argument("ensemble_mean_records: n, N must be >= 1");
  if (N == 1) return rw_mean_records_asymptotic(n);
  return 2.0 * std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(N)));
}

double ensemble_rate(std::int64_t n, std::int64_t N) {
  if (n < 1 || N < 1) throw std::invalid_argument("ensemble_rate: n, N must be >= 1");
  if (N == 1) return rw_rate_asymptotic(n);
  return std::sqrt(std::log(static_cast<double>(N)) / static_cast<double>(n));
}

double cauchy_drift_exponent(double c) { return 0.5 + std::atan(c) / kPi; }

double fpt_symmetric(std::int64_t window) {
  if (window < 1) throw std::invalid_argument("fpt_symmetric: window must be >= 1");
  return std::sqrt(static_cast<double>(window) / kPi);
}

double conditional_prob_biased(double c, const DistributionSpec& jump) {
  return 0.5 + jump.density_at_zero() * c;
}

double pmf_half_gaussian(std::int64_t m, std::int64_t n) {
  if (m < 1) throw std::invalid_argument("pmf_half_gaussian: m must be >= 1");
  if (n < 1) throw std::invalid_argument("pmf_half_gaussian: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::exp(-md * md / (4.0 * nd)) / std::sqrt(nd * kPi);
}

}  // namespace recordstats::analytics
