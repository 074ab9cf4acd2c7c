#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace recordstats {

// Windowed first-passage statistics. For each start index t with a full
// window of `window` steps ahead, the positive (negative) first-passage time
// is the smallest j in [1, window] with values[t+j] strictly above (below)
// values[t]; starts whose window contains no crossing are censored.
//
// Two normalizations are reported:
//   mean_pos/mean_neg          - average over uncensored events only.
//   mean_pos_all/mean_neg_all  - uncensored fpt sum divided by all starts
//                                (censored starts contribute zero). This is
//                                the quantity the symmetric-walk reference
//                                sqrt(window/pi) approximates.
struct FptReport {
  int window = 0;
  double mean_pos = 0.0;
  double mean_neg = 0.0;
  double mean_pos_all = 0.0;
  double mean_neg_all = 0.0;
  std::uint64_t starts = 0;
  std::uint64_t censored_pos = 0;
  std::uint64_t censored_neg = 0;
};

FptReport windowed_fpt(std::span<const double> values, int window);

class FptTally {
 public:
  FptTally() = default;
  explicit FptTally(int window);

  void add(std::span<const double> values);
  void merge(const FptTally& other);
  FptReport report() const;

 private:
  int window_ = 0;
  std::uint64_t starts_ = 0;
  std::uint64_t pos_events_ = 0, neg_events_ = 0;
  std::uint64_t pos_sum_ = 0, neg_sum_ = 0;
};

// Monte Carlo survival probability Q_n = P[X_1..X_n all > 0].
struct SurvivalCurve {
  std::vector<double> q;        // q[0] = 1 by convention
  std::vector<double> stderr_;
  std::uint64_t replicas = 0;
};

class SurvivalTally {
 public:
  SurvivalTally() = default;
  explicit SurvivalTally(std::size_t series_length);

  void add(std::span<const double> values);  // values[0] is the origin
  void merge(const SurvivalTally& other);
  SurvivalCurve curve() const;

 private:
  std::vector<std::uint64_t> alive_;
  std::uint64_t replicas_ = 0;
};

SurvivalCurve survival_curve(const std::vector<std::vector<double>>& series);

}  // namespace recordstats
