#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pasplit {

using Rational = boost::multiprecision::cpp_rational;

// Shortest fraction p/q (q <= 10^9) that reproduces x to within one part in
// 10^15; falls back to the exact binary value of x.
Rational to_rational(double x);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Parses "p/q" or a decimal literal ("0.25", "-1", "1e-3") exactly.
Rational parse_rational(const std::string& text);

}  // namespace pasplit
