#pragma once

#include <string>

namespace lpq {

/// Text that round-trips the double exactly (%.17g).
std::string format_double(double value);
/// Fixed-point text with `digits` decimals.
std::string format_fixed(double value, int digits);

}  // namespace lpq
