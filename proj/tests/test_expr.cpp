#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fourball/expr.hpp"

using fourball::parse_real;

TEST_CASE("decimal literals") {
    CHECK(parse_real("0.08") == 0.08);
    CHECK(parse_real("1e-3") == 1e-3);
    CHECK(parse_real(" 0.5 ") == 0.5);
    CHECK(parse_real("-0.25") == -0.25);
}

// correctly rounded: the cancellation must not cost digits
TEST_CASE("exact forms") {
    CHECK(parse_real("5-2*sqrt(6)") == 0.10102051443364381);
    CHECK(parse_real("3-2*sqrt(2)") == 0.17157287525380990);
    CHECK(parse_real("3+2*sqrt(2)-2*sqrt(4+3*sqrt(2))") == 0.086427233725889792);
    CHECK(parse_real("(1+2)*3") == 9);
    CHECK(parse_real("7-4*sqrt(3)") == 0.071796769724490826);
}

TEST_CASE("malformed input is rejected") {
    for (const char* s : {"", "abc", "1+", "sqrt(", "sqrt(-1)", "2**3", "1 2", "0.1x", "nan", "inf"})
        CHECK_THROWS_AS(parse_real(s), std::invalid_argument);
}
