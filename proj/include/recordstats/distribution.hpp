#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "recordstats/rng.hpp"

namespace recordstats {

enum class Family { kGaussian, kUniform, kLaplace, kCauchy, kStudentsT };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Symmetric continuous jump/innovation distribution. `scale` is the standard
// deviation for Gaussian, the half-width for Uniform, and the usual scale
// parameter for Laplace/Cauchy/Students-T. `nu` is the Students-T tail
// parameter and ignored elsewhere.
struct DistributionSpec {
  Family family = Family::kGaussian;
  double scale = 1.0;
  double nu = 3.0;

  void validate() const;  // throws std::invalid_argument

  double pdf(double x) const;
  double cdf(double x) const;
  double sample(RandomStream& rng) const;

  // Absent when the second moment does not exist (Cauchy, Students-T nu<=2).
  std::optional<double> variance() const;
  double density_at_zero() const { return pdf(0.0); }

  // Tail classification: 2 for all finite-variance families, 1 for Cauchy,
  // min(nu, 2) for Students-T.
  double levy_index() const;

  // Same family rescaled so the variance is exactly 1. Throws when the
  // variance is undefined.
  DistributionSpec normalized_to_unit_variance() const;

  nlohmann::json to_json() const;
  static DistributionSpec from_json(const nlohmann::json& j);

  static DistributionSpec gaussian(double sigma = 1.0) { return {Family::kGaussian, sigma, 0.0}; }
  static DistributionSpec uniform(double half_width) { return {Family::kUniform, half_width, 0.0}; }
  static DistributionSpec laplace(double scale) { return {Family::kLaplace, scale, 0.0}; }
  static DistributionSpec cauchy(double scale = 1.0) { return {Family::kCauchy, scale, 0.0}; }
  static DistributionSpec students_t(double nu, double scale = 1.0) {
    return {Family::kStudentsT, scale, nu};
  }
  // Students-T rescaled to unit variance (requires nu > 2).
  static DistributionSpec unit_students_t(double nu) {
    return students_t(nu).normalized_to_unit_variance();
  }
};

// log pdf of the standard (scale 1) Students-T density with parameter nu;
// the normalization constant is precomputed once, which matters in
// likelihood loops.
class StudentsTLogDensity {
 public:
  explicit StudentsTLogDensity(double nu);
  double operator()(double x) const;
  double nu() const { return nu_; }

 private:
  double nu_;
  double log_norm_;
};

}  // namespace recordstats
