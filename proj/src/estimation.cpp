#include "recordstats/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "recordstats/distribution.hpp"
#include "recordstats/nelder_mead.hpp"

namespace recordstats {

namespace {

constexpr double kNuLo = 2.1;
constexpr double kNuHi = 50.0;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double logit(double p) {
  p = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return std::log(p / (1.0 - p));
}

double expit(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Active-coordinate map between ArGarchParams and the unconstrained vector
// the simplex works in. Slots: 0 drift (identity), 1 logit(alpha),
// 2 ln(alpha0), 3 logit(alpha1+beta1), 4 logit(alpha1/(alpha1+beta1)),
// 5 logit((nu-lo)/(hi-lo)). The map guarantees feasible parameters for any
// finite coordinates.
class ParamTransform {
 public:
  ParamTransform(const FitOptions& options, const ArGarchParams& fixed) : fixed_(fixed) {
    if (options.fit_drift) slots_.push_back(0);
    if (options.fit_ar_alpha) slots_.push_back(1);
    slots_.push_back(2);  // alpha0 is always estimated
    if (options.fit_garch) {
      slots_.push_back(3);
      slots_.push_back(4);
    }
    if (options.fit_nu) slots_.push_back(5);
  }

  std::size_t dim() const { return slots_.size(); }
  const std::vector<int>& slots() const { return slots_; }

  std::vector<double> to_vector(const ArGarchParams& p) const {
    std::vector<double> theta(dim());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      switch (slots_[i]) {
        case 0: theta[i] = p.drift; break;
        case 1: theta[i] = logit(p.ar_alpha); break;
        case 2: theta[i] = std::log(std::max(p.alpha0, 1e-300)); break;
        case 3: theta[i] = logit(p.alpha1 + p.beta1); break;
        case 4: {
          const double s = p.alpha1 + p.beta1;
          theta[i] = logit(s > 0.0 ? p.alpha1 / s : 0.5);
          break;
        }
        case 5: theta[i] = logit((p.nu - kNuLo) / (kNuHi - kNuLo)); break;
      }
    }
    return theta;
  }

  ArGarchParams to_params(std::span<const double> theta) const {
    ArGarchParams p = fixed_;
    double s = fixed_.alpha1 + fixed_.beta1;
    double w = s > 0.0 ? fixed_.alpha1 / s : 0.0;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      switch (slots_[i]) {
        case 0: p.drift = theta[i]; break;
        case 1: p.ar_alpha = expit(theta[i]); break;
        case 2: p.alpha0 = std::exp(theta[i]); break;
        case 3: s = expit(theta[i]); break;
        case 4: w = expit(theta[i]); break;
        case 5: p.nu = kNuLo + (kNuHi - kNuLo) * expit(theta[i]); break;
      }
    }
    p.alpha1 = s * w;
    p.beta1 = s * (1.0 - w);
    return p;
  }

  // d(param in slot)/d(theta_i); the (alpha1, beta1) pair mixes slots 3, 4.
  void jacobian_row(std::span<const double> theta, int param_index,
                    std::span<double> row) const {
    std::fill(row.begin(), row.end(), 0.0);
    double s = fixed_.alpha1 + fixed_.beta1;
    double w = s > 0.0 ? fixed_.alpha1 / s : 0.0;
    int slot3 = -1, slot4 = -1;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i] == 3) {
        slot3 = static_cast<int>(i);
        s = expit(theta[i]);
      }
      if (slots_[i] == 4) {
        slot4 = static_cast<int>(i);
        w = expit(theta[i]);
      }
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const double t = theta[i];
      switch (slots_[i]) {
        case 0:
          if (param_index == 0) row[i] = 1.0;
          break;
        case 1:
          if (param_index == 1) row[i] = expit(t) * (1.0 - expit(t));
          break;
        case 2:
          if (param_index == 2) row[i] = std::exp(t);
          break;
        case 5:
          if (param_index == 5) row[i] = (kNuHi - kNuLo) * expit(t) * (1.0 - expit(t));
          break;
        default: break;
      }
    }
    if (param_index == 3 || param_index == 4) {
      const double ds = s * (1.0 - s);
      const double dw = w * (1.0 - w);
      if (slot3 >= 0) row[static_cast<std::size_t>(slot3)] = param_index == 3 ? ds * w : ds * (1.0 - w);
      if (slot4 >= 0) row[static_cast<std::size_t>(slot4)] = param_index == 3 ? s * dw : -s * dw;
    }
  }

 private:
  ArGarchParams fixed_;
  std::vector<int> slots_;
};

// Gauss-Jordan inversion with partial pivoting; returns false when singular.
bool invert_matrix(std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-300) return false;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const double d = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = m[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  m = std::move(inv);
  return true;
}

}  // namespace

void ArGarchParams::validate() const {
  if (!std::isfinite(drift)) throw std::invalid_argument("drift must be finite");
  if (!(ar_alpha > 0.0 && ar_alpha <= 1.0)) {
    throw std::invalid_argument("ar_alpha must lie in (0, 1]");
  }
  if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be > 0");
  if (alpha1 < 0.0 || beta1 < 0.0) throw std::invalid_argument("alpha1, beta1 must be >= 0");
  if (!(alpha1 + beta1 < 1.0)) throw std::invalid_argument("alpha1 + beta1 must be < 1");
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
}

nlohmann::json ArGarchParams::to_json() const {
  return nlohmann::json{{"c", drift},     {"alpha", ar_alpha}, {"alpha0", alpha0},
                        {"alpha1", alpha1}, {"beta1", beta1},
                        {"nu", std::isinf(nu) ? nlohmann::json("inf") : nlohmann::json(nu)}};
}

ArGarchParams ArGarchParams::from_json(const nlohmann::json& j) {
  ArGarchParams p;
  p.drift = j.value("c", 0.0);
  p.ar_alpha = j.value("alpha", 1.0);
  p.alpha0 = j.value("alpha0", 1e-5);
  p.alpha1 = j.value("alpha1", 0.0);
  p.beta1 = j.value("beta1", 0.0);
  if (j.contains("nu") && j["nu"].is_string()) {
    p.nu = kInf;
  } else {
    p.nu = j.value("nu", 3.0);
  }
  p.validate();
  return p;
}

double log_likelihood(std::span<const double> series, const ArGarchParams& params) {
  if (series.size() < 10) {
    throw std::invalid_argument("log_likelihood: series must have at least 10 observations");
  }
  params.validate();

  const bool gaussian = std::isinf(params.nu);
  const StudentsTLogDensity t_density(gaussian ? 3.0 : params.nu);
  constexpr double kLogSqrt2Pi = 0.9189385332046727;  // ln sqrt(2 pi)

  double sig2 = params.stationary_variance();
  double ll = 0.0;
  double prev = series[0];
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!(sig2 > 0.0) || !std::isfinite(sig2)) return -kInf;
    const double eps = series[i] - params.ar_alpha * prev - params.drift;
    const double sig = std::sqrt(sig2);
    const double z = eps / sig;
    ll += (gaussian ? -0.5 * z * z - kLogSqrt2Pi : t_density(z)) - std::log(sig);
    sig2 = params.alpha0 + params.alpha1 * eps * eps + params.beta1 * sig2;
    prev = series[i];
  }
  return std::isfinite(ll) ? ll : -kInf;
}

nlohmann::json FitResult::to_json() const {
  nlohmann::json se = nlohmann::json::array();
  const char* names[6] = {"c", "alpha", "alpha0", "alpha1", "beta1", "nu"};
  nlohmann::json se_obj;
  for (int i = 0; i < 6; ++i) {
    se_obj[names[i]] = std::isnan(std_errors[static_cast<std::size_t>(i)])
                           ? nlohmann::json()
                           : nlohmann::json(std_errors[static_cast<std::size_t>(i)]);
  }
  (void)se;
  return nlohmann::json{{"params", params.to_json()},   {"loglik", loglik},
                        {"evaluations", evaluations},   {"converged", converged},
                        {"termination", termination},   {"std_errors", se_obj}};
}

FitResult fit(std::span<const double> series, std::optional<ArGarchParams> initial,
              const FitOptions& options) {
  if (series.size() < 10) {
    throw std::invalid_argument("fit: series must have at least 10 observations");
  }

  // Moment-based scales for the starting points.
  const std::size_t n = series.size() - 1;
  double inc_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) inc_mean += series[i + 1] - series[i];
  inc_mean /= static_cast<double>(n);
  double inc_var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = series[i + 1] - series[i] - inc_mean;
    inc_var += d * d;
  }
  inc_var = std::max(inc_var / static_cast<double>(n), 1e-12);

  ArGarchParams base;
  base.drift = inc_mean;
  base.ar_alpha = 0.999;
  base.alpha0 = inc_var * 0.05;
  base.alpha1 = 0.1;
  base.beta1 = 0.85;
  base.nu = options.fit_nu ? 3.0 : (initial ? initial->nu : 3.0);
  if (initial) base = *initial;
  if (!options.fit_garch) {
    base.alpha1 = 0.0;
    base.beta1 = 0.0;
  }

  const ParamTransform transform(options, base);
  auto objective = [&](std::span<const double> theta) {
    const ArGarchParams p = transform.to_params(theta);
    return -log_likelihood(series, p);
  };

  // Deterministic multistart grid around the moment estimates.
  struct Start {
    double alpha, a1, b1, alpha0_frac;
  };
  const Start starts[5] = {{0.999, 0.10, 0.85, 0.05},
                           {0.9999, 0.05, 0.90, 0.05},
                           {0.99, 0.20, 0.70, 0.10},
                           {0.999, 0.02, 0.50, 0.50},
                           {0.95, 0.30, 0.60, 0.10}};

  NelderMeadOptions nm;
  nm.max_evaluations = std::max(options.max_evaluations / options.multistarts, 1000);
  nm.tolerance = options.simplex_tolerance;

  FitResult best;
  best.loglik = -kInf;
  bool any_eval_ok = false;
  int total_evals = 0;
  std::vector<double> best_theta;

  const int n_starts = initial ? 1 : options.multistarts;
  for (int s = 0; s < n_starts; ++s) {
    ArGarchParams p0 = base;
    if (!initial) {
      const Start& st = starts[static_cast<std::size_t>(s) % 5];
      p0.ar_alpha = st.alpha;
      if (options.fit_garch) {
        p0.alpha1 = st.a1;
        p0.beta1 = st.b1;
      }
      p0.alpha0 = inc_var * st.alpha0_frac;
    }
    const std::vector<double> theta0 = transform.to_vector(p0);
    if (!std::isfinite(objective(theta0))) continue;
    const NelderMeadResult res = nelder_mead(objective, theta0, nm);
    total_evals += res.evaluations;
    if (!std::isfinite(res.value)) continue;
    any_eval_ok = true;
    const double ll = -res.value;
    const bool better =
        ll > best.loglik ||
        (ll == best.loglik && std::lexicographical_compare(res.x.begin(), res.x.end(),
                                                           best_theta.begin(), best_theta.end()));
    if (better) {
      best.loglik = ll;
      best.params = transform.to_params(res.x);
      best.converged = res.converged;
      best_theta = res.x;
    }
  }
  best.evaluations = total_evals;
  best.termination = best.converged ? "simplex_tolerance" : "max_evaluations";
  if (!any_eval_ok) throw std::runtime_error("fit: likelihood evaluation failed at every start");

  // Numerical Hessian of -loglik in transformed coordinates.
  best.std_errors.fill(kNan);
  const std::size_t dim = transform.dim();
  const double h = 1e-4;
  std::vector<std::vector<double>> hess(dim, std::vector<double>(dim, 0.0));
  std::vector<double> theta = best_theta;
  const double f0 = objective(theta);
  bool hessian_ok = std::isfinite(f0);
  for (std::size_t i = 0; i < dim && hessian_ok; ++i) {
    for (std::size_t j = i; j < dim && hessian_ok; ++j) {
      double value;
      if (i == j) {
        auto probe = [&](double d) {
          theta[i] += d;
          const double v = objective(theta);
          theta[i] -= d;
          return v;
        };
        value = (probe(h) - 2.0 * f0 + probe(-h)) / (h * h);
      } else {
        auto probe = [&](double di, double dj) {
          theta[i] += di;
          theta[j] += dj;
          const double v = objective(theta);
          theta[i] -= di;
          theta[j] -= dj;
          return v;
        };
        value = (probe(h, h) - probe(h, -h) - probe(-h, h) + probe(-h, -h)) / (4.0 * h * h);
      }
      if (!std::isfinite(value)) hessian_ok = false;
      hess[i][j] = hess[j][i] = value;
    }
  }
  if (hessian_ok && invert_matrix(hess)) {
    std::vector<double> row(dim);
    for (int param = 0; param < 6; ++param) {
      transform.jacobian_row(best_theta, param, row);
      bool active = false;
      for (double v : row) {
        if (v != 0.0) active = true;
      }
      if (!active) continue;
      double var = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) var += row[i] * hess[i][j] * row[j];
      }
      best.std_errors[static_cast<std::size_t>(param)] = var > 0.0 ? std::sqrt(var) : kNan;
    }
  }
  return best;
}

}  // namespace recordstats
