#include "recordstats/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "recordstats/report_io.hpp"

namespace recordstats {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_price(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

class ErrorCollector {
 public:
  void add(std::size_t row, const std::string& message) {
    if (errors_.size() < kMaxListed) {
      errors_.push_back("row " + std::to_string(row) + ": " + message);
    }
    ++count_;
  }

  void throw_if_any(const std::string& context) const {
    if (count_ == 0) return;
    std::string msg = context + ": " + std::to_string(count_) + " bad row(s)";
    for (const auto& e : errors_) msg += "\n  " + e;
    if (count_ > errors_.size()) msg += "\n  ...";
    throw std::runtime_error(msg);
  }

 private:
  static constexpr std::size_t kMaxListed = 20;
  std::vector<std::string> errors_;
  std::size_t count_ = 0;
};

PanelLoadResult load_wide(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("wide CSV: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw std::runtime_error("wide CSV: header needs date + ticker columns");

  PanelLoadResult out;
  out.panel.tickers.assign(header.begin() + 1, header.end());
  {
    std::set<std::string> seen;
    for (const auto& t : out.panel.tickers) {
      if (!seen.insert(t).second) throw std::runtime_error("wide CSV: duplicate ticker " + t);
    }
  }
  out.panel.closes.resize(out.panel.tickers.size());

  ErrorCollector errors;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      errors.add(row, "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
      continue;
    }
    const auto date = Date::parse(fields[0]);
    if (!date) {
      errors.add(row, "unparseable date '" + fields[0] + "'");
      continue;
    }
    if (!out.panel.dates.empty() && !(out.panel.dates.back() < *date)) {
      errors.add(row, "dates not strictly increasing at " + date->to_string());
      continue;
    }
    std::vector<double> values(out.panel.tickers.size());
    bool row_ok = true;
    for (std::size_t c = 0; c < values.size(); ++c) {
      const std::string& cell = fields[c + 1];
      if (cell.empty()) {
        errors.add(row, "missing price for " + out.panel.tickers[c]);
        row_ok = false;
        break;
      }
      if (!parse_price(cell, values[c])) {
        errors.add(row, "unparseable price '" + cell + "' for " + out.panel.tickers[c]);
        row_ok = false;
        break;
      }
      if (!(values[c] > 0.0)) {
        errors.add(row, "non-positive price " + cell + " for " + out.panel.tickers[c]);
        row_ok = false;
        break;
      }
    }
    if (!row_ok) continue;
    out.panel.dates.push_back(*date);
    for (std::size_t c = 0; c < values.size(); ++c) out.panel.closes[c].push_back(values[c]);
  }
  errors.throw_if_any("wide CSV load");
  if (out.panel.dates.empty()) throw std::runtime_error("wide CSV: no data rows");
  return out;
}

PanelLoadResult load_long(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("long CSV: missing header");
  const auto header = split_csv_line(line);
  if (header.size() != 3) throw std::runtime_error("long CSV: expected date,ticker,close header");

  struct Row {
    Date date;
    double close;
  };
  std::map<std::string, std::vector<Row>> by_ticker;
  std::set<std::pair<std::string, std::int64_t>> seen;
  std::set<std::int64_t> date_keys;
  std::map<std::int64_t, Date> date_by_key;

  ErrorCollector errors;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      errors.add(row, "expected 3 fields, got " + std::to_string(fields.size()));
      continue;
    }
    const auto date = Date::parse(fields[0]);
    if (!date) {
      errors.add(row, "unparseable date '" + fields[0] + "'");
      continue;
    }
    if (fields[1].empty()) {
      errors.add(row, "empty ticker");
      continue;
    }
    double close;
    if (!parse_price(fields[2], close)) {
      errors.add(row, "unparseable price '" + fields[2] + "'");
      continue;
    }
    if (!(close > 0.0)) {
      errors.add(row, "non-positive price " + fields[2] + " for " + fields[1]);
      continue;
    }
    const std::int64_t key = date->days_from_civil();
    if (!seen.insert({fields[1], key}).second) {
      errors.add(row, "duplicate (date,ticker) " + fields[0] + "," + fields[1]);
      continue;
    }
    by_ticker[fields[1]].push_back({*date, close});
    date_keys.insert(key);
    date_by_key.emplace(key, *date);
  }
  errors.throw_if_any("long CSV load");
  if (by_ticker.empty()) throw std::runtime_error("long CSV: no data rows");

  PanelLoadResult out;
  out.panel.dates.reserve(date_keys.size());
  for (const auto key : date_keys) out.panel.dates.push_back(date_by_key.at(key));

  for (auto& [ticker, rows] : by_ticker) {
    if (rows.size() != date_keys.size()) {
      out.warnings.push_back("ticker " + ticker + " dropped: covers " +
                             std::to_string(rows.size()) + " of " +
                             std::to_string(date_keys.size()) + " dates");
      continue;
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.date < b.date; });
    out.panel.tickers.push_back(ticker);
    auto& series = out.panel.closes.emplace_back();
    series.reserve(rows.size());
    for (const auto& r : rows) series.push_back(r.close);
  }
  if (out.panel.tickers.empty()) {
    throw std::runtime_error("long CSV: no ticker covers the full date grid");
  }
  return out;
}

// OLS of y against 0..n-1; returns {intercept, slope}.
std::pair<double, double> ols_line(std::span<const double> y) {
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  const double t_mean = 0.5 * (nd - 1.0);
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= nd;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - t_mean;
    sxy += dt * (y[t] - y_mean);
    sxx += dt * dt;
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {y_mean - slope * t_mean, slope};
}

}  // namespace

int StockPanel::find_ticker(const std::string& name) const {
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    if (tickers[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> StockPanel::log_prices(std::size_t ticker) const {
  const auto& s = closes.at(ticker);
  std::vector<double> out(s.size());
  const double log_s0 = std::log(s[0]);
  for (std::size_t t = 0; t < s.size(); ++t) out[t] = std::log(s[t]) - log_s0;
  return out;
}

std::vector<double> StockPanel::log_returns(std::size_t ticker) const {
  const auto& s = closes.at(ticker);
  std::vector<double> out(s.size() > 0 ? s.size() - 1 : 0);
  for (std::size_t t = 1; t < s.size(); ++t) out[t - 1] = std::log(s[t] / s[t - 1]);
  return out;
}

std::vector<double> StockPanel::abs_returns(std::size_t ticker) const {
  const auto& s = closes.at(ticker);
  std::vector<double> out(s.size() > 0 ? s.size() - 1 : 0);
  for (std::size_t t = 1; t < s.size(); ++t) out[t - 1] = s[t] - s[t - 1];
  return out;
}

PanelLoadResult load_csv(std::istream& is, PanelFormat format) {
  return format == PanelFormat::kWide ? load_wide(is) : load_long(is);
}

PanelLoadResult load_csv(const std::string& path, PanelFormat format) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load_csv(is, format);
}

void write_csv(const StockPanel& panel, std::ostream& os, PanelFormat format, int digits) {
  if (format == PanelFormat::kWide) {
    os << "date";
    for (const auto& t : panel.tickers) os << ',' << t;
    os << '\n';
    for (std::size_t d = 0; d < panel.days(); ++d) {
      os << panel.dates[d].to_string();
      for (std::size_t c = 0; c < panel.width(); ++c) {
        os << ',' << format_double(panel.closes[c][d], digits);
      }
      os << '\n';
    }
  } else {
    os << "date,ticker,close\n";
    for (std::size_t c = 0; c < panel.width(); ++c) {
      for (std::size_t d = 0; d < panel.days(); ++d) {
        os << panel.dates[d].to_string() << ',' << panel.tickers[c] << ','
           << format_double(panel.closes[c][d], digits) << '\n';
      }
    }
  }
}

DriftEstimate estimate_drift(std::span<const double> log_prices) {
  if (log_prices.size() < 3) {
    throw std::invalid_argument("estimate_drift: need at least 3 observations");
  }
  DriftEstimate est;
  est.drift = ols_line(log_prices).second;
  double mean = 0.0;
  const std::size_t n = log_prices.size() - 1;
  std::vector<double> delta(n);
  for (std::size_t t = 0; t < n; ++t) {
    delta[t] = log_prices[t + 1] - log_prices[t];
    mean += delta[t];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double d : delta) ss += (d - mean) * (d - mean);
  est.sigma = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  return est;
}

IntervalScheme IntervalScheme::for_days(std::size_t total_days, int length) {
  if (length < 1) throw std::invalid_argument("interval length must be >= 1");
  IntervalScheme s;
  s.length = length;
  s.count = static_cast<int>(total_days / static_cast<std::size_t>(length));
  return s;
}

SeriesPanel to_log_panel(const StockPanel& panel) {
  SeriesPanel out;
  out.tickers = panel.tickers;
  out.dates = panel.dates;
  out.values.reserve(panel.width());
  for (std::size_t c = 0; c < panel.width(); ++c) out.values.push_back(panel.log_prices(c));
  return out;
}

DetrendMode detrend_mode_from_name(const std::string& name) {
  if (name == "none") return DetrendMode::kNone;
  if (name == "per_series") return DetrendMode::kPerSeries;
  if (name == "index_mean") return DetrendMode::kIndexMean;
  throw std::invalid_argument("unknown detrend mode: " + name);
}

std::string detrend_mode_name(DetrendMode mode) {
  switch (mode) {
    case DetrendMode::kNone: return "none";
    case DetrendMode::kPerSeries: return "per_series";
    case DetrendMode::kIndexMean: return "index_mean";
  }
  throw std::logic_error("unknown detrend mode");
}

SeriesPanel detrend(const SeriesPanel& panel, const IntervalScheme& scheme, DetrendMode mode) {
  if (mode == DetrendMode::kNone) return panel;
  if (scheme.length < 3) throw std::invalid_argument("detrend: interval shorter than 3");
  SeriesPanel out = panel;
  const std::size_t len = static_cast<std::size_t>(scheme.length);
  for (int iv = 0; iv < scheme.count; ++iv) {
    const std::size_t base = static_cast<std::size_t>(iv) * len;
    if (mode == DetrendMode::kPerSeries) {
      for (auto& series : out.values) {
        const auto [a, b] = ols_line(std::span(series).subspan(base, len));
        for (std::size_t t = 0; t < len; ++t) {
          series[base + t] -= a + b * static_cast<double>(t);
        }
      }
    } else {
      std::vector<double> mean(len, 0.0);
      for (const auto& series : out.values) {
        for (std::size_t t = 0; t < len; ++t) mean[t] += series[base + t];
      }
      for (auto& v : mean) v /= static_cast<double>(out.values.size());
      const auto [a, b] = ols_line(mean);
      for (auto& series : out.values) {
        for (std::size_t t = 0; t < len; ++t) {
          series[base + t] -= a + b * static_cast<double>(t);
        }
      }
    }
  }
  return out;
}

SeriesPanel normalize_unit_std(const SeriesPanel& panel, std::vector<std::string>* warnings) {
  SeriesPanel out = panel;
  for (std::size_t c = 0; c < out.values.size(); ++c) {
    auto& series = out.values[c];
    if (series.size() < 2) continue;
    const std::size_t n = series.size() - 1;
    double mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) mean += series[t + 1] - series[t];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double d = series[t + 1] - series[t] - mean;
      ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (!(sd > 0.0)) {
      if (warnings) {
        warnings->push_back("ticker " + out.tickers[c] + " skipped in normalization (sigma = 0)");
      }
      continue;
    }
    for (auto& v : series) v /= sd;
  }
  return out;
}

std::vector<std::vector<double>> interval_slices(std::span<const double> series,
                                                 const IntervalScheme& scheme, bool anchor) {
  std::vector<std::vector<double>> out;
  const std::size_t len = static_cast<std::size_t>(scheme.length);
  out.reserve(static_cast<std::size_t>(scheme.count));
  for (int iv = 0; iv < scheme.count; ++iv) {
    const std::size_t base = static_cast<std::size_t>(iv) * len;
    if (base + len > series.size()) break;
    std::vector<double> slice(series.begin() + static_cast<std::ptrdiff_t>(base),
                              series.begin() + static_cast<std::ptrdiff_t>(base + len));
    if (anchor) {
      const double v0 = slice.front();
      for (auto& v : slice) v -= v0;
    }
    out.push_back(std::move(slice));
  }
  return out;
}

std::vector<double> returns_with_leading_zero(std::span<const double> returns) {
  std::vector<double> out;
  out.reserve(returns.size() + 1);
  out.push_back(0.0);
  out.insert(out.end(), returns.begin(), returns.end());
  return out;
}

}  // namespace recordstats
