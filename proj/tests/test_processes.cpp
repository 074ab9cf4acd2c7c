#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "recordstats/montecarlo.hpp"
#include "recordstats/process.hpp"
#include "test_support.hpp"

using namespace recordstats;

namespace {

ProcessConfig walk_config(double drift = 0.0, double sigma = 1.0) {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kRandomWalk;
  cfg.jump = DistributionSpec::gaussian(sigma);
  cfg.drift = drift;
  return cfg;
}

}  // namespace

TEST_CASE("ar1 with alpha=1 equals the random walk draw by draw") {
  ProcessConfig ar = walk_config();
  ar.kind = ProcessKind::kAr1;
  ar.ar_alpha = 1.0;
  RandomStream r1(42), r2(42);
  const auto t_ar = generate(ar, 500, r1);
  const auto t_rw = generate(walk_config(), 500, r2);
  REQUIRE(t_ar.values.size() == t_rw.values.size());
  for (std::size_t i = 0; i < t_ar.values.size(); ++i) {
    CHECK(t_ar.values[i] == t_rw.values[i]);
  }
}

TEST_CASE("ar1 with alpha=0 reproduces the raw draws") {
  ProcessConfig ar = walk_config();
  ar.kind = ProcessKind::kAr1;
  ar.ar_alpha = 0.0;
  RandomStream r1(7), r2(7);
  const auto t = generate(ar, 200, r1);
  for (std::size_t i = 1; i < t.values.size(); ++i) {
    CHECK(t.values[i] == ar.jump.sample(r2));
  }
}

TEST_CASE("trajectory starts at zero and has the requested length") {
  RandomStream rng(1);
  const auto t = generate(walk_config(), 50, rng);
  CHECK(t.values.size() == 51);
  CHECK(t.values[0] == 0.0);
  CHECK(t.steps() == 50);
}

TEST_CASE("degenerate garch has constant volatility and walk-like records") {
  ProcessConfig garch;
  garch.kind = ProcessKind::kGarch11;
  garch.jump = DistributionSpec::gaussian(1.0);
  garch.garch_alpha0 = 0.25;

  RandomStream rng(3);
  const auto t = generate(garch, 100, rng);
  for (std::size_t i = 1; i < t.sigma.size(); ++i) {
    CHECK(t.sigma[i] == doctest::Approx(0.5).epsilon(1e-12));
  }

  // Monte Carlo equivalence oracle: <R_1000> of the degenerate GARCH matches
  // a Gaussian walk with jump scale sqrt(alpha0).
  ExperimentConfig a;
  a.process = garch;
  a.steps = 1000;
  a.replicas = 100000;
  a.master_seed = 11;

  ExperimentConfig b;
  b.process = walk_config(0.0, 0.5);
  b.steps = 1000;
  b.replicas = 100000;
  b.master_seed = 12;

  const auto ra = run(a);
  const auto rb = run(b);
  const std::size_t last = 1000;
  const double mean_a = ra.records.mean_records_at(Direction::kUpper, last);
  const double mean_b = rb.records.mean_records_at(Direction::kUpper, last);
  const double joint = std::hypot(ra.records.mean_records_stderr_at(Direction::kUpper, last),
                                  rb.records.mean_records_stderr_at(Direction::kUpper, last));
  CHECK(std::fabs(mean_a - mean_b) < 3.5 * joint);
}

TEST_CASE("stationary variance") {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kGarch11;
  cfg.jump = DistributionSpec::gaussian(1.0);

  cfg.garch_alpha0 = 0.1;
  cfg.garch_alpha1 = 0.2;
  cfg.garch_beta1 = 0.3;
  CHECK(cfg.stationary_variance() == doctest::Approx(0.2).epsilon(1e-12));

  cfg.garch_alpha0 = 0.000019;
  cfg.garch_alpha1 = 0.12;
  cfg.garch_beta1 = 0.85;
  CHECK(cfg.stationary_variance() == doctest::Approx(6.333333e-4).epsilon(1e-6));

  cfg.garch_alpha0 = 1.0;
  cfg.garch_alpha1 = 0.0;
  cfg.garch_beta1 = 0.0;
  CHECK(cfg.stationary_variance() == doctest::Approx(1.0).epsilon(1e-12));

  ProcessConfig wrong = walk_config();
  CHECK_THROWS_AS(wrong.stationary_variance(), std::invalid_argument);
}

TEST_CASE("config validation") {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kGarch11;
  cfg.jump = DistributionSpec::gaussian(1.0);
  cfg.garch_alpha0 = 0.1;
  cfg.garch_alpha1 = 0.5;
  cfg.garch_beta1 = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  ProcessConfig ar = walk_config();
  ar.kind = ProcessKind::kAr1;
  ar.ar_alpha = 1.5;
  CHECK_THROWS_AS(ar.validate(), std::invalid_argument);
  ar.ar_alpha = -0.1;
  CHECK_THROWS_AS(ar.validate(), std::invalid_argument);

  RandomStream rng(5);
  CHECK_THROWS_AS(generate(walk_config(), 0, rng), std::invalid_argument);
}

TEST_CASE("same substream gives bit-identical trajectories") {
  const ProcessConfig cfg = walk_config(0.01);
  RandomStream a = RandomStream::substream(99, 17);
  RandomStream b = RandomStream::substream(99, 17);
  const auto ta = generate(cfg, 300, a);
  const auto tb = generate(cfg, 300, b);
  for (std::size_t i = 0; i < ta.values.size(); ++i) CHECK(ta.values[i] == tb.values[i]);
}

TEST_CASE("reversed increments reach the same endpoint") {
  // Increments rounded to a dyadic grid so both summation orders are exact.
  testsupport::OracleRng rng(123);
  std::vector<double> inc(1000);
  for (auto& v : inc) {
    v = std::round(rng.uniform_pm1() * 1048576.0) / 1048576.0;
  }
  double fwd = 0.0, bwd = 0.0;
  for (std::size_t i = 0; i < inc.size(); ++i) fwd += inc[i];
  for (std::size_t i = inc.size(); i-- > 0;) bwd += inc[i];
  CHECK(fwd == bwd);
}

TEST_CASE("garch volatility path stays positive") {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kGarch11;
  cfg.jump = DistributionSpec::students_t(3.0);
  cfg.garch_alpha0 = 1e-6;
  cfg.garch_alpha1 = 0.05;
  cfg.garch_beta1 = 0.9;
  RandomStream rng(8);
  const auto t = generate(cfg, 10000, rng);
  for (std::size_t i = 1; i < t.sigma.size(); ++i) CHECK(t.sigma[i] > 0.0);
}

TEST_CASE("long-run garch increment variance matches the stationary value") {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kGarch11;
  cfg.jump = DistributionSpec::gaussian(1.0);
  cfg.garch_alpha0 = 0.2;
  cfg.garch_alpha1 = 0.1;
  cfg.garch_beta1 = 0.5;
  const double target = cfg.stationary_variance();

  RandomStream rng(21);
  const int n = 1'000'000;
  const int burn_in = 10'000;
  const auto t = generate(cfg, n, rng);
  double sum = 0.0, sum2 = 0.0;
  int count = 0;
  for (int i = burn_in + 1; i <= n; ++i) {
    const double d = t.values[static_cast<std::size_t>(i)] - t.values[static_cast<std::size_t>(i - 1)];
    sum += d;
    sum2 += d * d;
    ++count;
  }
  const double var = sum2 / count - (sum / count) * (sum / count);
  CHECK(std::fabs(var - target) / target < 0.03);
}

TEST_CASE("json round trip") {
  ProcessConfig cfg;
  cfg.kind = ProcessKind::kArGarch;
  cfg.jump = DistributionSpec::students_t(3.0);
  cfg.drift = 0.0032;
  cfg.ar_alpha = 0.9993;
  cfg.garch_alpha0 = 0.000019;
  cfg.garch_alpha1 = 0.12;
  cfg.garch_beta1 = 0.85;
  const auto back = ProcessConfig::from_json(cfg.to_json());
  CHECK(back.kind == cfg.kind);
  CHECK(back.drift == cfg.drift);
  CHECK(back.ar_alpha == cfg.ar_alpha);
  CHECK(back.garch_alpha0 == cfg.garch_alpha0);
  CHECK(back.garch_alpha1 == cfg.garch_alpha1);
  CHECK(back.garch_beta1 == cfg.garch_beta1);
}
