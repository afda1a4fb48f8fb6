#include "iradic/probability_format.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>

#include "iradic/error.h"

namespace iradic {

namespace {

std::string FormatE(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*E", digits, value);
  return buf;
}

}  // namespace

std::string render_probability(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw DomainError("cannot render probability " + std::to_string(value));
  }
  return FormatE(value, 3);
}

std::string serialize_probability(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot serialize non-finite number");
  for (int digits = 3; digits < 17; ++digits) {
    std::string text = FormatE(value, digits);
    if (std::strtod(text.c_str(), nullptr) == value) return text;
  }
  return FormatE(value, 17);
}

std::optional<double> parse_number(const std::string& text) {
  static const std::regex kNumber(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  if (!std::regex_match(text, kNumber)) return std::nullopt;
  errno = 0;
  double value = std::strtod(text.c_str(), nullptr);
  if (errno == ERANGE && std::isinf(value)) return std::nullopt;
  return value;
}

std::string render_percent(double fraction) {
  if (std::isnan(fraction)) return "n/a";
  if (fraction == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.2f%%", fraction * 100);
  std::string s = buf;
  if (s[0] == '+') s.erase(0, 1);
  return s;
}

}  // namespace iradic
