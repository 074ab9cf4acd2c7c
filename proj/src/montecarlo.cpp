#include "recordstats/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "recordstats/parallel.hpp"

namespace recordstats {

void ExperimentConfig::validate() const {
  process.validate();
  if (steps < 1) throw std::invalid_argument("experiment steps must be >= 1");
  if (replicas < 1) throw std::invalid_argument("experiment replicas must be >= 1");
  if (with_conditional && conditional_lag < 1) {
    throw std::invalid_argument("conditional lag must be >= 1");
  }
  if (fpt_window < 0 || fpt_window >= steps + 1) {
    throw std::invalid_argument("fpt window must lie in [1, steps]");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{{"process", process.to_json()},
                        {"steps", steps},
                        {"replicas", replicas},
                        {"master_seed", master_seed},
                        {"workers", workers},
                        {"with_records", with_records},
                        {"with_survival", with_survival},
                        {"with_conditional", with_conditional},
                        {"conditional_lag", conditional_lag},
                        {"fpt_window", fpt_window}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.process = ProcessConfig::from_json(j.at("process"));
  cfg.steps = j.value("steps", 100);
  cfg.replicas = j.value("replicas", std::uint64_t{1});
  cfg.master_seed = j.value("master_seed", std::uint64_t{1});
  cfg.workers = j.value("workers", 0u);
  cfg.with_records = j.value("with_records", true);
  cfg.with_survival = j.value("with_survival", false);
  cfg.with_conditional = j.value("with_conditional", false);
  cfg.conditional_lag = j.value("conditional_lag", 1);
  cfg.fpt_window = j.value("fpt_window", 0);
  cfg.validate();
  return cfg;
}

namespace {

struct WorkerState {
  RecordTally records;
  SurvivalTally survival;
  FptTally fpt;
  std::vector<ConditionalTally> conditionals;
  std::uint64_t completed = 0;

  WorkerState(const ExperimentConfig& cfg)
      : records(static_cast<std::size_t>(cfg.steps) + 1),
        survival(static_cast<std::size_t>(cfg.steps) + 1),
        fpt(cfg.fpt_window > 0 ? FptTally(cfg.fpt_window) : FptTally()) {
    if (cfg.with_conditional) {
      conditionals.emplace_back(Direction::kUpper, Direction::kUpper, cfg.conditional_lag);
      conditionals.emplace_back(Direction::kLower, Direction::kLower, cfg.conditional_lag);
      conditionals.emplace_back(Direction::kUpper, Direction::kLower, cfg.conditional_lag);
      conditionals.emplace_back(Direction::kLower, Direction::kUpper, cfg.conditional_lag);
    }
  }
};

}  // namespace

ExperimentReport run(const ExperimentConfig& config) {
  config.validate();

  const unsigned workers = resolve_workers(config.workers);
  std::vector<WorkerState> states;
  states.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) states.emplace_back(config);

  const auto start_time = std::chrono::steady_clock::now();
  std::atomic<bool> out_of_budget{false};

  parallel_chunks(config.replicas, workers,
                  [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
                    WorkerState& st = states[w];
                    Trajectory traj;
                    for (std::uint64_t r = begin; r < end; ++r) {
                      if (config.max_seconds > 0.0) {
                        if (out_of_budget.load(std::memory_order_relaxed)) break;
                        const std::chrono::duration<double> elapsed =
                            std::chrono::steady_clock::now() - start_time;
                        if (elapsed.count() > config.max_seconds) {
                          out_of_budget.store(true, std::memory_order_relaxed);
                          break;
                        }
                      }
                      RandomStream rng = RandomStream::substream(config.master_seed, r);
                      generate_into(config.process, config.steps, rng, traj);
                      if (config.with_records || config.with_conditional) {
                        st.records.add(traj.values);
                      }
                      if (config.with_survival) st.survival.add(traj.values);
                      if (config.fpt_window > 0) st.fpt.add(traj.values);
                      if (config.with_conditional) {
                        const RecordSeries rec = detect_records(traj.values);
                        for (auto& tally : st.conditionals) tally.add(rec);
                      }
                      ++st.completed;
                    }
                  });

  ExperimentReport report;
  report.replicas_requested = config.replicas;
  for (unsigned w = 0; w < workers; ++w) {
    report.replicas_completed += states[w].completed;
    if (config.with_records || config.with_conditional) report.records.merge(states[w].records);
    if (config.with_survival) report.survival.merge(states[w].survival);
  }
  if (config.fpt_window > 0) {
    FptTally merged(config.fpt_window);
    for (unsigned w = 0; w < workers; ++w) merged.merge(states[w].fpt);
    report.fpt = merged.report();
  }
  if (config.with_conditional) {
    for (int k = 0; k < 4; ++k) {
      ConditionalTally merged = states[0].conditionals[static_cast<std::size_t>(k)];
      for (unsigned w = 1; w < workers; ++w) {
        merged.merge(states[w].conditionals[static_cast<std::size_t>(k)]);
      }
      const auto res = merged.result();
      switch (k) {
        case 0: report.cond_upper_upper = res; break;
        case 1: report.cond_lower_lower = res; break;
        case 2: report.cond_upper_lower = res; break;
        case 3: report.cond_lower_upper = res; break;
      }
    }
  }

  report.partial = report.replicas_completed < report.replicas_requested;
  if (report.partial) throw PartialResultError{std::move(report)};
  return report;
}

}  // namespace recordstats
