#pragma once

#include <string>

namespace imatch::csv {

// Shortest round-trip decimal form of `value` ('.' separator, locale-free).
std::string number(double value);

}  // namespace imatch::csv
