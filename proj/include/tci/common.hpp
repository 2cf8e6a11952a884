// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tci {

using EntityId = std::int64_t;
using PolicyId = std::int64_t;
using ConnectionId = std::int64_t;

inline constexpr double kYearDays = 365.25;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Input rows or loaded files that violate the data contract.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (non-finite objective, singular system, failed bracket).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Calendar date at day resolution. Internally the library works in fractional
// years from a dataset origin (Jan 1 of the earliest policy-start year);
// dates exist only at the file boundary.
struct Date {
  int y = 1970;
  int m = 1;
  int d = 1;

  // days since 1970-01-01 (Howard Hinnant's civil-date algorithm)
  long long days() const {
    int yy = y - (m <= 2);
    const long long era = (yy >= 0 ? yy : yy - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(yy - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
  }

  static Date from_days(long long z) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yy = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned dd = doy - (153 * mp + 2) / 5 + 1;
    const unsigned mm = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(yy + (mm <= 2)), static_cast<int>(mm),
                static_cast<int>(dd)};
  }

  bool operator==(const Date&) const = default;
  auto operator<=>(const Date&) const = default;
};

Date parse_iso_date(const std::string& s);
std::string to_iso_string(const Date& d);

// Fractional years between two dates under the 365.25-day-year convention.
inline double years_between(const Date& from, const Date& to) {
  return static_cast<double>(to.days() - from.days()) / kYearDays;
}

// Calendar year containing origin + t years.
inline int year_of_time(int origin_year, double t) {
  const long long day0 = Date{origin_year, 1, 1}.days();
  const long long day = day0 + static_cast<long long>(t * kYearDays + 1e-9);
  return Date::from_days(day).y;
}

}  // namespace tci
