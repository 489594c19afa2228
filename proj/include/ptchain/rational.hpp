#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ptchain {

// Exact scalars used throughout: arbitrary-precision integers and
// gcd-reduced rationals with positive denominator (both guaranteed by
// the backing representation after every operation).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const Int& n) { return n.sign(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Parses "p", "-p" or "p/q" with arbitrary-precision parts. Throws
/// std::invalid_argument on anything else (including decimal points:
/// inexact input goes through parse_decimal_inexact instead).
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() {
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Int(text));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) bad();
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

/// Result of converting a decimal string to the nearest representable
/// dyadic rational (the binary double it parses to). `error` is the exact
/// difference |decimal - dyadic|.
struct InexactParse {
  Rational value;
  Rational error;
};

inline InexactParse parse_decimal_inexact(const std::string& text) {
  char* end = nullptr;
  const double d = std::strtod(text.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == text.c_str())
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  const Rational dyadic(d);  // doubles convert exactly

  // Exact value of the decimal literal, for the recorded conversion error.
  std::string mantissa = text;
  Rational exact;
  const auto epos = mantissa.find_first_of("eE");
  long exp10 = 0;
  if (epos != std::string::npos) {
    exp10 = std::strtol(mantissa.c_str() + epos + 1, nullptr, 10);
    mantissa = mantissa.substr(0, epos);
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa.empty() || mantissa == "-" || mantissa == "+") {
    exact = Rational(0);
  } else {
    exact = Rational(Int(mantissa));
  }
  Int pow10 = 1;
  for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) pow10 *= 10;
  if (exp10 >= 0)
    exact *= Rational(pow10);
  else
    exact /= Rational(pow10);

  Rational err = exact - dyadic;
  if (err < 0) err = -err;
  return {dyadic, err};
}

/// "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace ptchain
