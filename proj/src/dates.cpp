#include "recordstats/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace recordstats {

namespace {

bool parse_int_field(std::string_view s, int& out) {
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

}  // namespace

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  Date d;
  if (!parse_int_field(iso.substr(0, 4), d.year)) return std::nullopt;
  if (!parse_int_field(iso.substr(5, 2), d.month)) return std::nullopt;
  if (!parse_int_field(iso.substr(8, 2), d.day)) return std::nullopt;
  if (d.month < 1 || d.month > 12) return std::nullopt;
  if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
  return d;
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t Date::days_from_civil() const {
  std::int64_t y = year;
  y -= month <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2u) / 5u + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int Date::weekday_mon0() const {
  const std::int64_t z = days_from_civil();
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  return static_cast<int>(((z + 3) % 7 + 7) % 7);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

}  // namespace recordstats
