#include "lpq/format.hpp"

#include <cstdio>

namespace lpq {

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace lpq
