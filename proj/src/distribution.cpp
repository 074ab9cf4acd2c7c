#include "recordstats/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "recordstats/special.hpp"

namespace recordstats {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kGaussian: return "gaussian";
    case Family::kUniform: return "uniform";
    case Family::kLaplace: return "laplace";
    case Family::kCauchy: return "cauchy";
    case Family::kStudentsT: return "students_t";
  }
  throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "gaussian") return Family::kGaussian;
  if (name == "uniform") return Family::kUniform;
  if (name == "laplace") return Family::kLaplace;
  if (name == "cauchy") return Family::kCauchy;
  if (name == "students_t") return Family::kStudentsT;
  throw std::invalid_argument("unknown distribution family: " + name);
}

void DistributionSpec::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("distribution scale must be positive and finite");
  }
  if (family == Family::kStudentsT && (!(nu > 0.0) || !std::isfinite(nu))) {
    throw std::invalid_argument("students_t nu must be positive and finite");
  }
}

double DistributionSpec::pdf(double x) const {
  validate();
  const double z = x / scale;
  switch (family) {
    case Family::kGaussian:
      return std::exp(-0.5 * z * z) / (scale * std::sqrt(2.0 * kPi));
    case Family::kUniform:
      return (z >= -1.0 && z <= 1.0) ? 1.0 / (2.0 * scale) : 0.0;
    case Family::kLaplace:
      return std::exp(-std::fabs(z)) / (2.0 * scale);
    case Family::kCauchy:
      return 1.0 / (kPi * scale * (1.0 + z * z));
    case Family::kStudentsT: {
      const double log_norm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                              0.5 * std::log(nu * kPi);
      return std::exp(log_norm - 0.5 * (nu + 1.0) * std::log1p(z * z / nu)) / scale;
    }
  }
  throw std::logic_error("unknown family");
}

double DistributionSpec::cdf(double x) const {
  validate();
  const double z = x / scale;
  switch (family) {
    case Family::kGaussian:
      return 0.5 * std::erfc(-z / kSqrt2);
    case Family::kUniform:
      if (z <= -1.0) return 0.0;
      if (z >= 1.0) return 1.0;
      return 0.5 * (z + 1.0);
    case Family::kLaplace:
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    case Family::kCauchy:
      return 0.5 + std::atan(z) / kPi;
    case Family::kStudentsT: {
      if (z == 0.0) return 0.5;
      const double t2 = z * z;
      const double p = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, nu / (nu + t2));
      return z > 0.0 ? 1.0 - p : p;
    }
  }
  throw std::logic_error("unknown family");
}

double DistributionSpec::sample(RandomStream& rng) const {
  switch (family) {
    case Family::kGaussian:
      return scale * rng.gaussian();
    case Family::kUniform:
      return scale * (2.0 * rng.u01() - 1.0);
    case Family::kLaplace: {
      const double u = rng.u01() - 0.5;
      const double mag = -std::log(1.0 - 2.0 * std::fabs(u));
      return u < 0.0 ? -scale * mag : scale * mag;
    }
    case Family::kCauchy:
      return scale * std::tan(kPi * (rng.u01() - 0.5));
    case Family::kStudentsT: {
      // Ratio construction: Z / sqrt(V/nu), V ~ chi^2_nu. Exact for all nu>0.
      const double z = rng.gaussian();
      const double v = 2.0 * rng.gamma(0.5 * nu);
      return scale * z / std::sqrt(v / nu);
    }
  }
  throw std::logic_error("unknown family");
}

std::optional<double> DistributionSpec::variance() const {
  validate();
  switch (family) {
    case Family::kGaussian: return scale * scale;
    case Family::kUniform: return scale * scale / 3.0;
    case Family::kLaplace: return 2.0 * scale * scale;
    case Family::kCauchy: return std::nullopt;
    case Family::kStudentsT:
      if (nu > 2.0) return scale * scale * nu / (nu - 2.0);
      return std::nullopt;
  }
  throw std::logic_error("unknown family");
}

double DistributionSpec::levy_index() const {
  validate();
  switch (family) {
    case Family::kCauchy: return 1.0;
    case Family::kStudentsT: return std::min(nu, 2.0);
    default: return 2.0;
  }
}

DistributionSpec DistributionSpec::normalized_to_unit_variance() const {
  const auto var = variance();
  if (!var) {
    throw std::invalid_argument("cannot normalize " + family_name(family) +
                                " to unit variance: variance undefined");
  }
  DistributionSpec out = *this;
  out.scale = scale / std::sqrt(*var);
  return out;
}

nlohmann::json DistributionSpec::to_json() const {
  nlohmann::json j{{"family", family_name(family)}, {"scale", scale}};
  if (family == Family::kStudentsT) j["nu"] = nu;
  return j;
}

DistributionSpec DistributionSpec::from_json(const nlohmann::json& j) {
  DistributionSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.scale = j.value("scale", 1.0);
  spec.nu = j.value("nu", 3.0);
  spec.validate();
  return spec;
}

StudentsTLogDensity::StudentsTLogDensity(double nu) : nu_(nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("students_t nu must be positive");
  log_norm_ = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * kPi);
}

double StudentsTLogDensity::operator()(double x) const {
  return log_norm_ - 0.5 * (nu_ + 1.0) * std::log1p(x * x / nu_);
}

}  // namespace recordstats
