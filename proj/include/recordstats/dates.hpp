#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace recordstats {

// Proleptic Gregorian calendar date (ISO-8601 YYYY-MM-DD).
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> parse(std::string_view iso);

  // Days since 1970-01-01 (negative before).
  std::int64_t days_from_civil() const;

  // Inverse of days_from_civil.
  static Date from_days(std::int64_t days);

  // 0 = Monday ... 6 = Sunday.
  int weekday_mon0() const;

  bool is_weekend() const { return weekday_mon0() >= 5; }

  std::string to_string() const;

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date& a, const Date& b) {
    return a.days_from_civil() <=> b.days_from_civil();
  }
};

}  // namespace recordstats
