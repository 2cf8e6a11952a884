// SPDX-License-Identifier: Apache-2.0
#include "tci/common.hpp"

#include <cctype>
#include <cstdio>

namespace tci {

Date parse_iso_date(const std::string& s) {
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' ||
      std::sscanf(s.c_str(), "%4d-%2d-%2d", &y, &m, &d) != 3)
    throw ValidationError("bad date '" + s + "' (expected YYYY-MM-DD)");
  if (m < 1 || m > 12 || d < 1 || d > 31)
    throw ValidationError("bad date '" + s + "' (out-of-range month or day)");
  return Date{y, m, d};
}

std::string to_iso_string(const Date& dt) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", dt.y, dt.m, dt.d);
  return std::string(buf);
}

}  // namespace tci
