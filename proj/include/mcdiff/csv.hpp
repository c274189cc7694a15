#pragma once

#include <string>

namespace mcdiff {

/// Round-trippable decimal form of a double (17 significant digits, '.' separator).
std::string format_double(double value);

} // namespace mcdiff
