#pragma once

#include <cstdint>
#include <optional>

#include "json.hpp"
#include "recordstats/firstpassage.hpp"
#include "recordstats/process.hpp"
#include "recordstats/records.hpp"

namespace recordstats {

// Reproducible replicated experiment over one process configuration.
// Replica r always draws from the substream derived from (master_seed, r),
// so integer statistics are bit-identical for any worker count; floating
// aggregates agree up to summation order.
struct ExperimentConfig {
  ProcessConfig process;
  int steps = 100;
  std::uint64_t replicas = 1;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency

  bool with_records = true;
  bool with_survival = false;
  bool with_conditional = false;
  int conditional_lag = 1;
  int fpt_window = 0;  // 0 = disabled

  double max_seconds = 0.0;  // 0 = unlimited; exceeded -> partial report

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ExperimentReport {
  std::uint64_t replicas_requested = 0;
  std::uint64_t replicas_completed = 0;
  bool partial = false;

  RecordTally records;
  SurvivalTally survival;
  std::optional<FptReport> fpt;

  // Conditional record statistics by (trigger, follow) direction.
  std::optional<ConditionalRecordStat> cond_upper_upper;
  std::optional<ConditionalRecordStat> cond_lower_lower;
  std::optional<ConditionalRecordStat> cond_upper_lower;
  std::optional<ConditionalRecordStat> cond_lower_upper;
};

// Thrown when the wall-clock budget is exhausted; carries what finished.
struct PartialResultError {
  ExperimentReport report;
};

ExperimentReport run(const ExperimentConfig& config);

}  // namespace recordstats
