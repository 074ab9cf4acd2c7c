#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recordstats/dates.hpp"

namespace recordstats {

enum class Direction { kUpper, kLower };

// Record flags for one series. Index 0 is a record in both directions (the
// running maximum and minimum start there); later entries set a record only
// on a strict inequality, so ties never break records.
struct RecordSeries {
  std::vector<std::uint8_t> upper;
  std::vector<std::uint8_t> lower;
  std::int64_t upper_count = 0;
  std::int64_t lower_count = 0;
};

RecordSeries detect_records(std::span<const double> values);

struct RecordRateCurve {
  std::vector<double> rate;     // rate[i] = P(record at step i)
  std::vector<double> stderr_;  // binomial standard error
  std::uint64_t replicas = 0;

  // Mean record number curve: cumulative sum of the rates.
  std::vector<double> mean_records() const;
};

// Streaming aggregation of record statistics over equal-length series.
// Tracks per-step record counts for both directions, the running
// record-number moments (for standard errors of the mean record number) and
// final record-number histograms.
class RecordTally {
 public:
  RecordTally() = default;
  explicit RecordTally(std::size_t series_length);

  void add(std::span<const double> values);
  void merge(const RecordTally& other);

  std::uint64_t replicas() const { return replicas_; }
  std::size_t series_length() const { return upper_counts_.size(); }

  RecordRateCurve curve(Direction d) const;

  // Mean record number at step i with its standard error across replicas.
  double mean_records_at(Direction d, std::size_t step) const;
  double mean_records_stderr_at(Direction d, std::size_t step) const;

  // hist[m] = number of replicas whose final record count is m.
  const std::vector<std::uint64_t>& final_histogram(Direction d) const;

 private:
  std::vector<std::uint64_t> upper_counts_, lower_counts_;
  std::vector<double> upper_sum_r_, upper_sum_r2_;  // running record number moments
  std::vector<double> lower_sum_r_, lower_sum_r2_;
  std::vector<std::uint64_t> upper_final_hist_, lower_final_hist_;
  std::uint64_t replicas_ = 0;
  std::vector<std::uint8_t> scratch_upper_, scratch_lower_;
};

// Per-step record rate over an ensemble of equal-length series.
// Requires >= 2 series; throws on ragged input.
RecordRateCurve rate_curve(const std::vector<std::vector<double>>& series, Direction d);

// Conditional record statistics: fraction of `trigger`-direction records that
// are followed by a `follow`-direction record within the next `lag` steps.
// lag = 1 is the next-day conditional probability; records too close to the
// series end to have a full lag window are not counted as trials.
struct ConditionalRecordStat {
  double prob = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

class ConditionalTally {
 public:
  ConditionalTally(Direction trigger, Direction follow, int lag);
  void add(const RecordSeries& records);
  void merge(const ConditionalTally& other);
  std::optional<ConditionalRecordStat> result() const;

  Direction trigger() const { return trigger_; }
  Direction follow() const { return follow_; }
  int lag() const { return lag_; }

 private:
  Direction trigger_, follow_;
  int lag_;
  std::uint64_t trials_ = 0, successes_ = 0;
};

std::optional<ConditionalRecordStat> conditional_record_prob(
    const std::vector<std::vector<double>>& series, Direction trigger, Direction follow, int lag);

// Binned normalized record rate n*p_n: within each bin of `bin_length` steps
// the record indicators are weighted by their step index, summed, and
// averaged per series and per step. The i.i.d. baseline is 1 in every bin.
// Index 0 (the conventional initial record) is excluded.
struct BinnedNormalizedRate {
  int bin_length = 0;
  std::vector<std::int64_t> bin_start;  // first step index of each bin
  std::vector<double> upper, lower;
  std::vector<double> upper_stderr, lower_stderr;  // across-series error of the bin mean
};

BinnedNormalizedRate normalized_record_rate(const std::vector<std::vector<double>>& series,
                                            int bin_length);

// Distribution of the final record number, on integer bins [lo, hi].
struct RecordNumberHistogram {
  std::vector<std::int64_t> bin_lo, bin_hi;  // inclusive integer edges
  std::vector<double> prob;                  // sums to 1
  double rescale = 1.0;
  std::uint64_t replicas = 0;

  // Bin centers divided by the rescale factor.
  std::vector<double> rescaled_centers() const;
};

RecordNumberHistogram record_number_distribution(const std::vector<std::vector<double>>& series,
                                                 Direction d, double rescale_by = 1.0,
                                                 int bin_width = 1);

// Same, from a final-count histogram (as produced by RecordTally).
RecordNumberHistogram record_number_distribution(const std::vector<std::uint64_t>& final_hist,
                                                 std::uint64_t replicas, double rescale_by = 1.0,
                                                 int bin_width = 1);

// Weekday distribution of records. Counts records per weekday Mon..Fri and
// reports the Monday-relative ratios. The trivial record at index 0 is not
// counted; weekend dates are rejected.
struct WeeklyRecordHistogram {
  std::array<std::uint64_t, 5> upper_counts{};
  std::array<std::uint64_t, 5> lower_counts{};
  std::array<double, 5> upper_ratio{};
  std::array<double, 5> lower_ratio{};

  void accumulate(const RecordSeries& records, std::span<const Date> dates);
  void finalize();  // fills the ratio arrays
};

WeeklyRecordHistogram weekly_histogram(const RecordSeries& records, std::span<const Date> dates);

}  // namespace recordstats
