#pragma once

#include <string>

namespace gdpwage {

// Shortest decimal text that parses back to the identical double.
std::string format_number(double value);

}  // namespace gdpwage
