#ifndef ULTRAS_RATIONAL_HPP
#define ULTRAS_RATIONAL_HPP

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ultras {

/// Exact rational number. Every quantitative value in the workbench is one of
/// these, so equivalence verdicts never depend on floating-point rounding.
using Rational = boost::multiprecision::cpp_rational;

/// Renders integers without a denominator ("2"), everything else as "n/d".
std::string to_string(const Rational& r);

/// Parses a non-negative literal: an integer ("2"), a fraction of integers
/// ("3/10"), or a decimal ("0.25", converted exactly). Returns nullopt for
/// malformed text or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace ultras

#endif
