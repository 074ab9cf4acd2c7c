#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

namespace recordstats {

// Parameters of the combined AR(1)-GARCH(1,1) model with Students-T
// innovations,
//   X_i = alpha X_{i-1} + sigma_i xi_i + c,
//   sigma_i^2 = alpha0 + alpha1 (xi_{i-1} sigma_{i-1})^2 + beta1 sigma_{i-1}^2.
// nu = infinity selects Gaussian innovations.
struct ArGarchParams {
  double drift = 0.0;
  double ar_alpha = 1.0;
  double alpha0 = 1e-5;
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double nu = 3.0;

  void validate() const;  // throws std::invalid_argument

  double stationary_variance() const { return alpha0 / (1.0 - alpha1 - beta1); }

  nlohmann::json to_json() const;
  static ArGarchParams from_json(const nlohmann::json& j);
};

// Conditional log likelihood of a log-price series X_0..X_n under the model
// above: sum_i [ln f_nu(eps_i/sigma_i) - ln sigma_i] with
// eps_i = X_i - alpha X_{i-1} - c, the volatility recursion seeded at the
// stationary variance, and the first observation conditioned on.
double log_likelihood(std::span<const double> series, const ArGarchParams& params);

struct FitOptions {
  bool fit_drift = true;
  bool fit_ar_alpha = true;
  bool fit_garch = true;  // when false, alpha1 = beta1 = 0 stay fixed
  bool fit_nu = false;    // free nu is bounded to [2.1, 50]
  int max_evaluations = 100000;
  double simplex_tolerance = 1e-8;
  int multistarts = 5;
};

struct FitResult {
  ArGarchParams params;
  double loglik = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::string termination;

  // Standard errors for (drift, ar_alpha, alpha0, alpha1, beta1, nu) from a
  // central-difference Hessian in the transformed coordinates; NaN for
  // parameters that were held fixed.
  std::array<double, 6> std_errors{};

  nlohmann::json to_json() const;
};

FitResult fit(std::span<const double> series, std::optional<ArGarchParams> initial = std::nullopt,
              const FitOptions& options = {});

}  // namespace recordstats
