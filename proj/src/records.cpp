#include "recordstats/records.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace recordstats {

namespace {

double binomial_stderr(double p, std::uint64_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

void check_equal_length(const std::vector<std::vector<double>>& series) {
  if (series.empty()) throw std::invalid_argument("no series given");
  const std::size_t len = series.front().size();
  for (const auto& s : series) {
    if (s.size() != len) throw std::invalid_argument("series lengths differ");
  }
}

}  // namespace

RecordSeries detect_records(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("detect_records: empty input");
  RecordSeries out;
  out.upper.assign(values.size(), 0);
  out.lower.assign(values.size(), 0);
  out.upper[0] = 1;
  out.lower[0] = 1;
  out.upper_count = 1;
  out.lower_count = 1;
  double max = values[0];
  double min = values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double v = values[i];
    if (v > max) {
      max = v;
      out.upper[i] = 1;
      ++out.upper_count;
    }
    if (v < min) {
      min = v;
      out.lower[i] = 1;
      ++out.lower_count;
    }
  }
  return out;
}

std::vector<double> RecordRateCurve::mean_records() const {
  std::vector<double> mean(rate.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < rate.size(); ++i) {
    acc += rate[i];
    mean[i] = acc;
  }
  return mean;
}

RecordTally::RecordTally(std::size_t series_length)
    : upper_counts_(series_length, 0),
      lower_counts_(series_length, 0),
      upper_sum_r_(series_length, 0.0),
      upper_sum_r2_(series_length, 0.0),
      lower_sum_r_(series_length, 0.0),
      lower_sum_r2_(series_length, 0.0),
      upper_final_hist_(series_length + 2, 0),
      lower_final_hist_(series_length + 2, 0) {}

void RecordTally::add(std::span<const double> values) {
  if (upper_counts_.empty()) *this = RecordTally(values.size());
  if (values.size() != upper_counts_.size()) {
    throw std::invalid_argument("RecordTally: series length mismatch");
  }
  double max = values[0];
  double min = values[0];
  std::uint64_t r_up = 1, r_low = 1;
  upper_counts_[0] += 1;
  lower_counts_[0] += 1;
  upper_sum_r_[0] += 1.0;
  upper_sum_r2_[0] += 1.0;
  lower_sum_r_[0] += 1.0;
  lower_sum_r2_[0] += 1.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double v = values[i];
    if (v > max) {
      max = v;
      ++upper_counts_[i];
      ++r_up;
    }
    if (v < min) {
      min = v;
      ++lower_counts_[i];
      ++r_low;
    }
    const double ru = static_cast<double>(r_up);
    const double rl = static_cast<double>(r_low);
    upper_sum_r_[i] += ru;
    upper_sum_r2_[i] += ru * ru;
    lower_sum_r_[i] += rl;
    lower_sum_r2_[i] += rl * rl;
  }
  upper_final_hist_[r_up] += 1;
  lower_final_hist_[r_low] += 1;
  ++replicas_;
}

void RecordTally::merge(const RecordTally& other) {
  if (other.replicas_ == 0) return;
  if (replicas_ == 0 && upper_counts_.empty()) {
    *this = other;
    return;
  }
  if (other.upper_counts_.size() != upper_counts_.size()) {
    throw std::invalid_argument("RecordTally: merge length mismatch");
  }
  for (std::size_t i = 0; i < upper_counts_.size(); ++i) {
    upper_counts_[i] += other.upper_counts_[i];
    lower_counts_[i] += other.lower_counts_[i];
    upper_sum_r_[i] += other.upper_sum_r_[i];
    upper_sum_r2_[i] += other.upper_sum_r2_[i];
    lower_sum_r_[i] += other.lower_sum_r_[i];
    lower_sum_r2_[i] += other.lower_sum_r2_[i];
  }
  for (std::size_t m = 0; m < upper_final_hist_.size(); ++m) {
    upper_final_hist_[m] += other.upper_final_hist_[m];
    lower_final_hist_[m] += other.lower_final_hist_[m];
  }
  replicas_ += other.replicas_;
}

RecordRateCurve RecordTally::curve(Direction d) const {
  const auto& counts = d == Direction::kUpper ? upper_counts_ : lower_counts_;
  RecordRateCurve c;
  c.replicas = replicas_;
  c.rate.resize(counts.size());
  c.stderr_.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = replicas_ ? static_cast<double>(counts[i]) / static_cast<double>(replicas_) : 0.0;
    c.rate[i] = p;
    c.stderr_[i] = binomial_stderr(p, replicas_);
  }
  return c;
}

double RecordTally::mean_records_at(Direction d, std::size_t step) const {
  const auto& sums = d == Direction::kUpper ? upper_sum_r_ : lower_sum_r_;
  if (step >= sums.size() || replicas_ == 0) throw std::out_of_range("mean_records_at");
  return sums[step] / static_cast<double>(replicas_);
}

double RecordTally::mean_records_stderr_at(Direction d, std::size_t step) const {
  const auto& sums = d == Direction::kUpper ? upper_sum_r_ : lower_sum_r_;
  const auto& sums2 = d == Direction::kUpper ? upper_sum_r2_ : lower_sum_r2_;
  if (step >= sums.size() || replicas_ == 0) throw std::out_of_range("mean_records_stderr_at");
  const double n = static_cast<double>(replicas_);
  const double mean = sums[step] / n;
  const double var = std::max(sums2[step] / n - mean * mean, 0.0);
  return std::sqrt(var / n);
}

const std::vector<std::uint64_t>& RecordTally::final_histogram(Direction d) const {
  return d == Direction::kUpper ? upper_final_hist_ : lower_final_hist_;
}

RecordRateCurve rate_curve(const std::vector<std::vector<double>>& series, Direction d) {
  check_equal_length(series);
  if (series.size() < 2) throw std::invalid_argument("rate_curve: need >= 2 series");
  RecordTally tally(series.front().size());
  for (const auto& s : series) tally.add(s);
  return tally.curve(d);
}

ConditionalTally::ConditionalTally(Direction trigger, Direction follow, int lag)
    : trigger_(trigger), follow_(follow), lag_(lag) {
  if (lag < 1) throw std::invalid_argument("conditional lag must be >= 1");
}

void ConditionalTally::add(const RecordSeries& records) {
  const auto& trig = trigger_ == Direction::kUpper ? records.upper : records.lower;
  const auto& fol = follow_ == Direction::kUpper ? records.upper : records.lower;
  const std::size_t n = trig.size();
  const std::size_t lag = static_cast<std::size_t>(lag_);
  if (n <= lag) return;
  for (std::size_t i = 0; i + lag < n; ++i) {
    if (!trig[i]) continue;
    ++trials_;
    for (std::size_t j = i + 1; j <= i + lag; ++j) {
      if (fol[j]) {
        ++successes_;
        break;
      }
    }
  }
}

void ConditionalTally::merge(const ConditionalTally& other) {
  trials_ += other.trials_;
  successes_ += other.successes_;
}

std::optional<ConditionalRecordStat> ConditionalTally::result() const {
  if (trials_ == 0) return std::nullopt;
  ConditionalRecordStat stat;
  stat.trials = trials_;
  stat.successes = successes_;
  stat.prob = static_cast<double>(successes_) / static_cast<double>(trials_);
  stat.stderr_ = binomial_stderr(stat.prob, trials_);
  return stat;
}

std::optional<ConditionalRecordStat> conditional_record_prob(
    const std::vector<std::vector<double>>& series, Direction trigger, Direction follow, int lag) {
  check_equal_length(series);
  ConditionalTally tally(trigger, follow, lag);
  for (const auto& s : series) tally.add(detect_records(s));
  return tally.result();
}

BinnedNormalizedRate normalized_record_rate(const std::vector<std::vector<double>>& series,
                                            int bin_length) {
  check_equal_length(series);
  if (bin_length < 1) throw std::invalid_argument("bin_length must be >= 1");
  const std::size_t len = series.front().size();
  const std::size_t n_steps = len - 1;  // record-capable steps are 1..n
  if (static_cast<std::size_t>(bin_length) > n_steps) {
    throw std::invalid_argument("bin longer than series");
  }
  const std::size_t bins = n_steps / static_cast<std::size_t>(bin_length);
  const std::size_t m = series.size();

  BinnedNormalizedRate out;
  out.bin_length = bin_length;
  out.bin_start.resize(bins);
  out.upper.assign(bins, 0.0);
  out.lower.assign(bins, 0.0);
  out.upper_stderr.assign(bins, 0.0);
  out.lower_stderr.assign(bins, 0.0);

  std::vector<double> up_sum(bins, 0.0), up_sum2(bins, 0.0);
  std::vector<double> low_sum(bins, 0.0), low_sum2(bins, 0.0);

  for (const auto& s : series) {
    const RecordSeries rec = detect_records(s);
    for (std::size_t b = 0; b < bins; ++b) {
      const std::size_t lo = 1 + b * static_cast<std::size_t>(bin_length);
      const std::size_t hi = lo + static_cast<std::size_t>(bin_length);  // exclusive
      double up = 0.0, low = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        if (rec.upper[i]) up += static_cast<double>(i);
        if (rec.lower[i]) low += static_cast<double>(i);
      }
      up /= bin_length;
      low /= bin_length;
      up_sum[b] += up;
      up_sum2[b] += up * up;
      low_sum[b] += low;
      low_sum2[b] += low * low;
    }
  }

  for (std::size_t b = 0; b < bins; ++b) {
    out.bin_start[b] = static_cast<std::int64_t>(1 + b * static_cast<std::size_t>(bin_length));
    const double dm = static_cast<double>(m);
    out.upper[b] = up_sum[b] / dm;
    out.lower[b] = low_sum[b] / dm;
    if (m > 1) {
      const double uv = std::max(up_sum2[b] / dm - out.upper[b] * out.upper[b], 0.0);
      const double lv = std::max(low_sum2[b] / dm - out.lower[b] * out.lower[b], 0.0);
      out.upper_stderr[b] = std::sqrt(uv / (dm - 1.0));
      out.lower_stderr[b] = std::sqrt(lv / (dm - 1.0));
    }
  }
  return out;
}

std::vector<double> RecordNumberHistogram::rescaled_centers() const {
  std::vector<double> centers(bin_lo.size());
  for (std::size_t i = 0; i < bin_lo.size(); ++i) {
    centers[i] = 0.5 * (static_cast<double>(bin_lo[i]) + static_cast<double>(bin_hi[i])) / rescale;
  }
  return centers;
}

RecordNumberHistogram record_number_distribution(const std::vector<std::uint64_t>& final_hist,
                                                 std::uint64_t replicas, double rescale_by,
                                                 int bin_width) {
  if (replicas < 100) throw std::invalid_argument("record_number_distribution: need >= 100 replicas");
  if (bin_width < 1) throw std::invalid_argument("bin_width must be >= 1");
  if (!(rescale_by > 0.0)) throw std::invalid_argument("rescale_by must be positive");

  std::size_t max_m = 0;
  for (std::size_t m = 0; m < final_hist.size(); ++m) {
    if (final_hist[m] > 0) max_m = m;
  }
  RecordNumberHistogram out;
  out.rescale = rescale_by;
  out.replicas = replicas;
  for (std::size_t lo = 1; lo <= max_m; lo += static_cast<std::size_t>(bin_width)) {
    const std::size_t hi = std::min(lo + static_cast<std::size_t>(bin_width) - 1, max_m);
    std::uint64_t count = 0;
    for (std::size_t m = lo; m <= hi && m < final_hist.size(); ++m) count += final_hist[m];
    out.bin_lo.push_back(static_cast<std::int64_t>(lo));
    out.bin_hi.push_back(static_cast<std::int64_t>(hi));
    out.prob.push_back(static_cast<double>(count) / static_cast<double>(replicas));
  }
  return out;
}

RecordNumberHistogram record_number_distribution(const std::vector<std::vector<double>>& series,
                                                 Direction d, double rescale_by, int bin_width) {
  check_equal_length(series);
  RecordTally tally(series.front().size());
  for (const auto& s : series) tally.add(s);
  return record_number_distribution(tally.final_histogram(d), tally.replicas(), rescale_by,
                                    bin_width);
}

void WeeklyRecordHistogram::accumulate(const RecordSeries& records, std::span<const Date> dates) {
  if (records.upper.size() != dates.size()) {
    throw std::invalid_argument("weekly_histogram: dates/values length mismatch");
  }
  for (std::size_t i = 0; i < dates.size(); ++i) {
    const int wd = dates[i].weekday_mon0();
    if (wd >= 5) {
      throw std::invalid_argument("weekly_histogram: weekend date " + dates[i].to_string());
    }
    if (i == 0) continue;  // initialization records carry no weekday signal
    if (records.upper[i]) ++upper_counts[wd];
    if (records.lower[i]) ++lower_counts[wd];
  }
}

void WeeklyRecordHistogram::finalize() {
  const double up_mon = static_cast<double>(upper_counts[0]);
  const double low_mon = static_cast<double>(lower_counts[0]);
  for (int w = 0; w < 5; ++w) {
    upper_ratio[w] = up_mon > 0 ? static_cast<double>(upper_counts[w]) / up_mon
                                : std::numeric_limits<double>::quiet_NaN();
    lower_ratio[w] = low_mon > 0 ? static_cast<double>(lower_counts[w]) / low_mon
                                 : std::numeric_limits<double>::quiet_NaN();
  }
}

WeeklyRecordHistogram weekly_histogram(const RecordSeries& records, std::span<const Date> dates) {
  WeeklyRecordHistogram h;
  h.accumulate(records, dates);
  h.finalize();
  return h;
}

}  // namespace recordstats
