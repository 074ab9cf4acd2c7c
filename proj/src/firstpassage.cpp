#include "recordstats/firstpassage.hpp"

#include <cmath>
#include <stdexcept>

namespace recordstats {

FptTally::FptTally(int window) : window_(window) {
  if (window < 1) throw std::invalid_argument("fpt window must be >= 1");
}

void FptTally::add(std::span<const double> values) {
  if (window_ < 1) throw std::logic_error("FptTally used before construction");
  const std::size_t len = values.size();
  const std::size_t window = static_cast<std::size_t>(window_);
  if (len <= window) {
    throw std::invalid_argument("fpt window must be shorter than the series");
  }
  for (std::size_t t = 0; t + window < len; ++t) {
    const double ref = values[t];
    std::size_t pos = 0, neg = 0;
    for (std::size_t j = 1; j <= window; ++j) {
      const double v = values[t + j];
      if (pos == 0 && v > ref) pos = j;
      if (neg == 0 && v < ref) neg = j;
      if (pos != 0 && neg != 0) break;
    }
    ++starts_;
    if (pos != 0) {
      ++pos_events_;
      pos_sum_ += pos;
    }
    if (neg != 0) {
      ++neg_events_;
      neg_sum_ += neg;
    }
  }
}

void FptTally::merge(const FptTally& other) {
  if (other.starts_ == 0) return;
  if (window_ == 0) window_ = other.window_;
  if (window_ != other.window_) throw std::invalid_argument("FptTally: window mismatch");
  starts_ += other.starts_;
  pos_events_ += other.pos_events_;
  neg_events_ += other.neg_events_;
  pos_sum_ += other.pos_sum_;
  neg_sum_ += other.neg_sum_;
}

FptReport FptTally::report() const {
  FptReport r;
  r.window = window_;
  r.starts = starts_;
  r.censored_pos = starts_ - pos_events_;
  r.censored_neg = starts_ - neg_events_;
  r.mean_pos = pos_events_ ? static_cast<double>(pos_sum_) / static_cast<double>(pos_events_) : 0.0;
  r.mean_neg = neg_events_ ? static_cast<double>(neg_sum_) / static_cast<double>(neg_events_) : 0.0;
  r.mean_pos_all = starts_ ? static_cast<double>(pos_sum_) / static_cast<double>(starts_) : 0.0;
  r.mean_neg_all = starts_ ? static_cast<double>(neg_sum_) / static_cast<double>(starts_) : 0.0;
  return r;
}

FptReport windowed_fpt(std::span<const double> values, int window) {
  FptTally tally(window);
  tally.add(values);
  return tally.report();
}

SurvivalTally::SurvivalTally(std::size_t series_length) : alive_(series_length, 0) {}

void SurvivalTally::add(std::span<const double> values) {
  if (alive_.empty()) *this = SurvivalTally(values.size());
  if (values.size() != alive_.size()) {
    throw std::invalid_argument("SurvivalTally: series length mismatch");
  }
  ++alive_[0];  // Q_0 = 1
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) break;
    ++alive_[i];
  }
  ++replicas_;
}

void SurvivalTally::merge(const SurvivalTally& other) {
  if (other.replicas_ == 0) return;
  if (replicas_ == 0 && alive_.empty()) {
    *this = other;
    return;
  }
  if (alive_.size() != other.alive_.size()) {
    throw std::invalid_argument("SurvivalTally: merge length mismatch");
  }
  for (std::size_t i = 0; i < alive_.size(); ++i) alive_[i] += other.alive_[i];
  replicas_ += other.replicas_;
}

SurvivalCurve SurvivalTally::curve() const {
  SurvivalCurve c;
  c.replicas = replicas_;
  c.q.resize(alive_.size());
  c.stderr_.resize(alive_.size());
  for (std::size_t i = 0; i < alive_.size(); ++i) {
    const double p =
        replicas_ ? static_cast<double>(alive_[i]) / static_cast<double>(replicas_) : 0.0;
    c.q[i] = p;
    c.stderr_[i] =
        replicas_ ? std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(replicas_)) : 0.0;
  }
  return c;
}

SurvivalCurve survival_curve(const std::vector<std::vector<double>>& series) {
  if (series.size() < 2) throw std::invalid_argument("survival_curve: need >= 2 series");
  SurvivalTally tally(series.front().size());
  for (const auto& s : series) tally.add(s);
  return tally.curve();
}

}  // namespace recordstats
