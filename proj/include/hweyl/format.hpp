#pragma once

#include <string>

namespace hweyl {

/// Shortest-roundtrip-safe decimal text for a double: 17 significant digits,
/// '.' separator regardless of the process locale.
std::string format_real(double value);

}  // namespace hweyl
