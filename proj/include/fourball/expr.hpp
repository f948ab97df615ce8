#pragma once

#include <string_view>

namespace fourball {

// Decimal literals or exact forms such as "5-2*sqrt(6)" or
// "3+2*sqrt(2)-2*sqrt(4+3*sqrt(2))". Throws std::invalid_argument.
double parse_real(std::string_view text);

}  // namespace fourball
