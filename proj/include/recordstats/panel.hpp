#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "recordstats/dates.hpp"

namespace recordstats {

// Dated daily closing prices on a complete shared date grid.
struct StockPanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;
  std::vector<std::vector<double>> closes;  // [ticker][day], all > 0

  std::size_t days() const { return dates.size(); }
  std::size_t width() const { return tickers.size(); }
  int find_ticker(const std::string& name) const;  // -1 when absent

  // s_t = ln(S_t / S_0)
  std::vector<double> log_prices(std::size_t ticker) const;
  // delta_t = ln(S_t / S_{t-1}), length days()-1
  std::vector<double> log_returns(std::size_t ticker) const;
  // Delta_t = S_t - S_{t-1}, length days()-1
  std::vector<double> abs_returns(std::size_t ticker) const;
};

enum class PanelFormat { kWide, kLong };

struct PanelLoadResult {
  StockPanel panel;
  std::vector<std::string> warnings;  // dropped tickers etc.
};

PanelLoadResult load_csv(std::istream& is, PanelFormat format);
PanelLoadResult load_csv(const std::string& path, PanelFormat format);

void write_csv(const StockPanel& panel, std::ostream& os, PanelFormat format, int digits = 17);

// Drift/volatility estimate of one log-price series: OLS slope of s_t
// against the day index, and the sample standard deviation of the
// increments (n-1 denominator).
struct DriftEstimate {
  double drift = 0.0;
  double sigma = 0.0;
};

DriftEstimate estimate_drift(std::span<const double> log_prices);

// Consecutive non-overlapping intervals of `length` days; count * length
// never exceeds the total number of days.
struct IntervalScheme {
  int length = 0;
  int count = 0;

  static IntervalScheme for_days(std::size_t total_days, int length);
};

// Log prices (or any derived per-day values) on the shared grid.
struct SeriesPanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;
  std::vector<std::vector<double>> values;  // [ticker][day]
};

SeriesPanel to_log_panel(const StockPanel& panel);

enum class DetrendMode { kNone, kPerSeries, kIndexMean };

DetrendMode detrend_mode_from_name(const std::string& name);
std::string detrend_mode_name(DetrendMode mode);

// Subtracts fitted linear trends interval by interval. kPerSeries fits each
// series on its own; kIndexMean fits the cross-ticker mean series and
// subtracts the same line from every ticker. Days beyond the last full
// interval are left unchanged.
SeriesPanel detrend(const SeriesPanel& panel, const IntervalScheme& scheme, DetrendMode mode);

// Rescales each series so the sample standard deviation of its increments
// is exactly 1; zero-variance series are left alone with a warning.
SeriesPanel normalize_unit_std(const SeriesPanel& panel,
                               std::vector<std::string>* warnings = nullptr);

// Interval views of one per-day series: `count` slices of length+? Each
// slice has `length` entries; when `anchor` is set the slice is shifted to
// start at zero.
std::vector<std::vector<double>> interval_slices(std::span<const double> series,
                                                 const IntervalScheme& scheme, bool anchor);

// Return-record series for one ticker: a leading zero followed by the log
// returns, so record detection starts from the conventional Delta_0 = 0.
std::vector<double> returns_with_leading_zero(std::span<const double> returns);

}  // namespace recordstats
