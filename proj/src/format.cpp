#include "lavrentiev/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <system_error>

namespace lavrentiev {

std::string format_roundtrip(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_sci(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", value);
  return buf;
}

namespace {

bool parse_exact(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

}  // namespace

double parse_real(std::string_view text) {
  double value = 0.0;
  if (parse_exact(text, value)) return value;
  const auto e = text.find_first_of("eE");
  double mantissa = 0.0, exponent = 0.0;
  if (e != std::string_view::npos && parse_exact(text.substr(0, e), mantissa) &&
      parse_exact(text.substr(e + 1), exponent)) {
    return mantissa * std::pow(10.0, exponent);
  }
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

}  // namespace lavrentiev
