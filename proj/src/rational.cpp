#include "ultras/rational.hpp"

#include <cctype>

namespace ultras {

std::string to_string(const Rational& r) { return r.str(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

using boost::multiprecision::cpp_int;

std::optional<Rational> parse_decimal(std::string_view s) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        if (!all_digits(s)) return std::nullopt;
        return Rational(cpp_int(std::string(s)));
    }
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    cpp_int num{std::string(whole)};
    cpp_int den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    cpp_int d{std::string(den)};
    if (d == 0) return std::nullopt;
    cpp_int n{std::string(num)};
    return Rational(n, d);
}

}  // namespace ultras
