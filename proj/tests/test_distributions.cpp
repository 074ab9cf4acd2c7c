#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "recordstats/distribution.hpp"
#include "test_support.hpp"

using namespace recordstats;

namespace {
constexpr double kPi = std::numbers::pi;

const DistributionSpec kAllFamilies[] = {
    DistributionSpec::gaussian(1.3),  DistributionSpec::uniform(2.0),
    DistributionSpec::laplace(0.7),   DistributionSpec::cauchy(1.1),
    DistributionSpec::students_t(3.0, 0.9),
};
}  // namespace

TEST_CASE("pdf values at the mode and in the tail") {
  CHECK(DistributionSpec::gaussian(1.0).pdf(0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));

  const auto t3 = DistributionSpec::unit_students_t(3.0);
  CHECK(t3.pdf(0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));

  // Unit-variance nu=3 density is exactly 2/(pi (1+x^2)^2).
  for (double x : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    CHECK(t3.pdf(x) == doctest::Approx(2.0 / (kPi * std::pow(1.0 + x * x, 2))).epsilon(1e-12));
  }

  // Far tail follows the 1/x^4 power law.
  const double tail = 2.0 / (kPi * std::pow(10.0, 4));
  CHECK(std::fabs(t3.pdf(10.0) - tail) / tail < 0.02);
}

TEST_CASE("pdf symmetry") {
  for (const auto& spec : kAllFamilies) {
    testsupport::OracleRng rng(99);
    for (int i = 0; i < 1000; ++i) {
      const double x = 20.0 * rng.uniform_pm1();
      CHECK(std::fabs(spec.pdf(x) - spec.pdf(-x)) < 1e-12);
    }
  }
}

TEST_CASE("pdf normalization against quadrature / analytic cdf") {
  for (const auto& spec : kAllFamilies) {
    const double a = -50.0 * spec.scale;
    const double b = 50.0 * spec.scale;
    // The uniform density jumps at its support edges, so the trapezoid rule
    // is only first-order accurate there and needs a much finer grid.
    const int intervals = spec.family == Family::kUniform ? 50'000'000 : 400'000;
    const double integral =
        testsupport::trapezoid([&](double x) { return spec.pdf(x); }, a, b, intervals);
    if (spec.family == Family::kCauchy || spec.family == Family::kStudentsT) {
      CHECK(integral == doctest::Approx(spec.cdf(b) - spec.cdf(a)).epsilon(1e-6));
    } else {
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("cdf consistency with quadrature for students-t") {
  const auto t = DistributionSpec::students_t(2.5, 1.2);
  for (double x : {-3.0, -0.7, 0.0, 1.1, 4.0}) {
    const double quad =
        0.5 + testsupport::simpson([&](double u) { return t.pdf(u); }, 0.0, x, 20000);
    CHECK(t.cdf(x) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("sampling moments: gaussian") {
  RandomStream rng(12345);
  const auto spec = DistributionSpec::gaussian(1.0);
  const int n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = spec.sample(rng);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 0.01);
}

TEST_CASE("sampling support: uniform") {
  RandomStream rng(7);
  const auto spec = DistributionSpec::uniform(1.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = spec.sample(rng);
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("students-t tail frequency matches the tail integral") {
  // Independent oracle: quadrature of the unit-variance nu=3 density beyond 5.
  const auto t3 = DistributionSpec::unit_students_t(3.0);
  const double tail_mass =
      2.0 * testsupport::simpson([](double x) { return 2.0 / (kPi * std::pow(1.0 + x * x, 2)); },
                                 5.0, 2000.0, 2000000);
  RandomStream rng(2024);
  const int n = 1'000'000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (std::fabs(t3.sample(rng)) > 5.0) ++hits;
  }
  const double frac = static_cast<double>(hits) / n;
  CHECK(frac > tail_mass / 1.5);
  CHECK(frac < tail_mass * 1.5);
}

TEST_CASE("variance, density at zero, levy index") {
  CHECK(!DistributionSpec::cauchy(1.0).variance().has_value());
  CHECK(DistributionSpec::students_t(3.0, 1.0).variance().value() == doctest::Approx(3.0));
  CHECK(!DistributionSpec::students_t(1.5, 1.0).variance().has_value());
  CHECK(DistributionSpec::gaussian(2.0).density_at_zero() ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * kPi))).epsilon(1e-9));

  CHECK(DistributionSpec::cauchy(1.0).levy_index() == 1.0);
  CHECK(DistributionSpec::gaussian(1.0).levy_index() == 2.0);
  CHECK(DistributionSpec::uniform(1.0).levy_index() == 2.0);
  CHECK(DistributionSpec::students_t(1.5).levy_index() == doctest::Approx(1.5));
  CHECK(DistributionSpec::students_t(3.0).levy_index() == 2.0);
}

TEST_CASE("unit-variance normalization") {
  const DistributionSpec finite[] = {
      DistributionSpec::gaussian(3.0),
      DistributionSpec::uniform(2.0),
      DistributionSpec::laplace(0.7),
      DistributionSpec::students_t(4.0, 1.5),
  };
  std::uint64_t seed = 31;
  for (const auto& spec : finite) {
    const auto unit = spec.normalized_to_unit_variance();
    CHECK(unit.variance().value() == doctest::Approx(1.0).epsilon(1e-12));
    RandomStream rng(seed++);
    const int n = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = unit.sample(rng);
      sum += x;
      sum2 += x * x;
    }
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(std::fabs(var - 1.0) < 0.01);
  }

  CHECK_THROWS_AS(DistributionSpec::cauchy(1.0).normalized_to_unit_variance(),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::students_t(2.0).normalized_to_unit_variance(),
                  std::invalid_argument);
}

TEST_CASE("parameter validation") {
  DistributionSpec bad = DistributionSpec::gaussian(0.0);
  CHECK_THROWS_AS(bad.pdf(1.0), std::invalid_argument);
  bad = DistributionSpec::students_t(-1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("json round trip") {
  const auto spec = DistributionSpec::students_t(3.0, 1.0);
  const auto j = spec.to_json();
  CHECK(j["family"] == "students_t");
  CHECK(j["scale"] == doctest::Approx(1.0));
  CHECK(j["nu"] == doctest::Approx(3.0));
  const auto back = DistributionSpec::from_json(j);
  CHECK(back.family == Family::kStudentsT);
  CHECK(back.scale == spec.scale);
  CHECK(back.nu == spec.nu);

  const auto parsed = DistributionSpec::from_json(
      nlohmann::json::parse(R"({"family": "students_t", "scale": 1.0, "nu": 3.0})"));
  CHECK(parsed.family == Family::kStudentsT);
}
