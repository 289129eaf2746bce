#include "pasplit/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pasplit {

using boost::multiprecision::cpp_int;

namespace {

Rational exact_binary(double x) {
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an exact integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r{cpp_int(scaled)};
  const int shift = exponent - 53;
  if (shift >= 0) {
    r *= Rational(cpp_int(1) << shift);
  } else {
    r /= Rational(cpp_int(1) << (-shift));
  }
  return r;
}

}  // namespace

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("to_rational: non-finite value");
  if (x == std::floor(x) && std::abs(x) < 9e15) return Rational(cpp_int(static_cast<long long>(x)));
  // Continued fraction convergents h/k.
  constexpr long long kMaxDen = 1'000'000'000LL;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rem);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > kMaxDen) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-15 * std::max(1.0, std::abs(x))) return Rational(h1, k1);
    const double frac = rem - a;
    if (frac == 0.0) break;
    rem = 1.0 / frac;
  }
  return exact_binary(x);
}

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  cpp_int digits = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool in_frac = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (in_frac) ++frac_digits;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: '" + text + "'");
  long exp10 = -frac_digits;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("not a number: '" + text + "'");
    std::size_t used = 0;
    const std::string tail = text.substr(pos + 1);
    long e = 0;
    try {
      e = std::stol(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != tail.size()) throw std::invalid_argument("not a number: '" + text + "'");
    exp10 += e;
  }
  if (std::abs(exp10) > 400) throw std::invalid_argument("exponent out of range: '" + text + "'");
  Rational r{digits};
  const cpp_int p = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::abs(exp10)));
  if (exp10 >= 0) {
    r *= Rational(p);
  } else {
    r /= Rational(p);
  }
  return negative ? Rational(-r) : r;
}

}  // namespace pasplit
