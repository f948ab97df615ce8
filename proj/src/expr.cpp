#include "fourball/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fourball/real.hpp"

namespace fourball {

namespace {

// sum := term (('+'|'-') term)*
// term := number ['*' factor] | factor
// factor := 'sqrt(' sum ')' | '(' sum ')' | number
// evaluated in extended precision and rounded once, so cancellations such as
// 5-2*sqrt(6) still give the nearest double
struct Parser {
    using R = extended_real;

    std::string_view s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("cannot parse real '" + std::string(s) + "': " + what);
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool at_number() {
        skip();
        return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.');
    }
    R number() {
        skip();
        double probe = 0;
        auto res = std::from_chars(s.data() + i, s.data() + s.size(), probe);
        if (res.ec != std::errc()) fail("expected a number");
        std::string token(s.substr(i, static_cast<std::size_t>(res.ptr - (s.data() + i))));
        i = static_cast<std::size_t>(res.ptr - s.data());
        return R(token);
    }
    R factor() {
        skip();
        if (s.substr(i, 5) == "sqrt(") {
            i += 5;
            R v = sum();
            if (!eat(')')) fail("missing ')'");
            if (v < 0) fail("square root of a negative value");
            return sqrt(v);
        }
        if (eat('(')) {
            R v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (at_number()) return number();
        fail("expected a number or sqrt(...)");
    }
    R term() {
        R v = factor();
        while (eat('*')) v *= factor();
        return v;
    }
    R sum() {
        R v;
        if (eat('-'))
            v = -term();
        else {
            eat('+');
            v = term();
        }
        while (true) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
};

}  // namespace

double parse_real(std::string_view text) {
    Parser p{text};
    double v = to_double(p.sum());
    p.skip();
    if (p.i != text.size()) p.fail("trailing characters");
    if (!std::isfinite(v)) p.fail("not finite");
    return v;
}

}  // namespace fourball
