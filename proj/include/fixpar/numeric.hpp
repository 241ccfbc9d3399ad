#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "fixpar/errors.hpp"

namespace fixpar {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// The two numeric backends: double for speed, Rational for exact oracle runs.
// Every templated operation below is written against this small trait surface.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_ratio(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }
  // Default comparison tolerance for pass/fail verdicts.
  static double verdict_tol() { return 1e-9; }
  // Tighter tolerance used when validating that masses sum to one.
  static double mass_tol() { return 1e-12; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_ratio(long long num, long long den) { return Rational(num, den); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational verdict_tol() { return Rational(0); }
  static Rational mass_tol() { return Rational(0); }
};

template <class S>
S abs_value(const S& x) {
  return x < S(0) ? S(-x) : x;
}

template <class S>
bool approx_equal(const S& a, const S& b, const S& tol) {
  return abs_value<S>(a - b) <= tol;
}

// a >= b up to tol (tol = 0 makes this exact).
template <class S>
bool geq_within(const S& a, const S& b, const S& tol) {
  return a >= b - tol;
}

template <class S>
S pow_int(S base, unsigned exp) {
  S result(1);
  while (exp) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

inline BigInt binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt result(1);
  for (int i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

// Parses "0.35", ".5", "7" or "7/20" into an exact rational.
inline Rational rational_from_decimal(const std::string& text) {
  if (text.empty()) throw FixparError("empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw FixparError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw FixparError("malformed number '" + text + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw FixparError("malformed number '" + text + "'");
    }
  }
  if (digits.empty()) throw FixparError("malformed number '" + text + "'");
  BigInt num(digits);
  if (negative) num = -num;
  return Rational(num, pow_int(BigInt(10), static_cast<unsigned>(frac_digits)));
}

// Backend-dispatched probability parsing for CLI / config strings.
template <class S>
S parse_scalar(const std::string& text);

template <>
inline double parse_scalar<double>(const std::string& text) {
  try {
    std::size_t used = 0;
    if (auto slash = text.find('/'); slash != std::string::npos)
      return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    double v = std::stod(text, &used);
    if (used != text.size()) throw FixparError("malformed number '" + text + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw FixparError("malformed number '" + text + "'");
  }
}

template <>
inline Rational parse_scalar<Rational>(const std::string& text) {
  return rational_from_decimal(text);
}

template <class S>
std::string scalar_to_string(const S& x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

template <class S>
double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

// Wilson score interval for a binomial proportion; z defaults to the
// two-sided 95% normal quantile. Used to put bands around sampled
// frequencies when exact enumeration is out of reach.
inline std::pair<double, double> wilson_interval(long long successes, long long trials,
                                                 double z = 1.959963984540054) {
  if (trials <= 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double centre = phat + z2 / (2.0 * n);
  double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  double lo = (centre - spread) / denom;
  double hi = (centre + spread) / denom;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

}  // namespace fixpar
