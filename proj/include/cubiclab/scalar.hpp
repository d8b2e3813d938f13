#pragma once
#ifndef CUBICLAB_SCALAR_HPP
#define CUBICLAB_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "cubiclab/errors.hpp"

namespace cubiclab {

/// Arbitrary-precision rational used by the exact backend.
using Rational = mpq_class;
using Integer = mpz_class;

enum class Backend { Exact, Float };

inline std::string_view to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

inline Backend parse_backend(std::string_view s) {
  if (s == "exact" || s == "EXACT") return Backend::Exact;
  if (s == "float" || s == "FLOAT") return Backend::Float;
  throw ParseError("unknown backend '" + std::string(s) + "'");
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr Backend backend = Backend::Exact;
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational from_int(long v) { return Rational(v); }
  static std::string str(const Rational& v) { return v.get_str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr Backend backend = Backend::Float;
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static std::string str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

template <class S>
concept Scalar = requires { scalar_traits<S>::backend; };

template <Scalar S>
inline constexpr bool is_exact_v = scalar_traits<S>::backend == Backend::Exact;

template <Scalar S>
double to_double(const S& v) { return scalar_traits<S>::to_double(v); }

template <Scalar S>
S abs_value(const S& v) { return scalar_traits<S>::abs(v); }

template <Scalar S>
bool is_zero(const S& v) { return scalar_traits<S>::is_zero(v); }

/// Parses an integer, `p/q` rational, or decimal literal exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty number");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  // decimal, possibly with exponent
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (...) {
      throw ParseError("bad exponent in '" + s + "'");
    }
  }
  bool neg = false;
  std::size_t pos = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    pos = 1;
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (; pos < mant.size(); ++pos) {
    char ch = mant[pos];
    if (ch == '.') {
      if (seen_dot) throw ParseError("bad number '" + s + "'");
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac;
    } else {
      throw ParseError("bad number '" + s + "'");
    }
  }
  if (digits.empty()) throw ParseError("bad number '" + s + "'");
  Integer num(digits, 10);
  long shift = exp10 - frac;
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

template <Scalar S>
S parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<S>) {
    return parse_rational(text);
  } else {
    return parse_rational(text).get_d();
  }
}

template <Scalar S>
std::string scalar_str(const S& v) { return scalar_traits<S>::str(v); }

}  // namespace cubiclab

#endif  // CUBICLAB_SCALAR_HPP
