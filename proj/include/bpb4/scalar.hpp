#pragma once

// Scalar backends. Every numeric routine in the library is a template over
// the scalar type and is instantiated for exactly two backends:
//
//   Rational  exact arithmetic (GMP rationals); all comparisons are exact.
//   double    IEEE arithmetic; comparisons use an additive tolerance of 1e-9.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bpb4 {

using Rational = mpq_class;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational tolerance() { return Rational(0); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double tolerance() { return 1e-9; }
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

inline Rational abs_of(const Rational& x) { return Rational(abs(x)); }
inline double abs_of(double x) { return x < 0 ? -x : x; }

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

/// Nearest double (GMP's get_d truncates toward zero).
double to_double(const Rational& x);
inline double to_double(double x) { return x; }

/// Exact conversion for Rational (every finite double is a dyadic rational).
template <Scalar S>
S from_double(double x);

template <>
inline Rational from_double<Rational>(double x) {
  return Rational(x);
}
template <>
inline double from_double<double>(double x) {
  return x;
}

/// num/den in the backend; exact for Rational.
template <Scalar S>
S ratio(std::int64_t num, std::int64_t den);

template <>
inline Rational ratio<Rational>(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}
template <>
inline double ratio<double>(std::int64_t num, std::int64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

/// Accepts "p/q", integers, and decimals with an optional exponent
/// ("-0.25", "1e-3"). Decimals parse exactly in the Rational backend.
template <Scalar S>
S parse_scalar(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);

/// Rationals print as "p/q" (or "p"); doubles print as the shortest
/// round-trip decimal.
std::string format_scalar(const Rational& x);
std::string format_scalar(double x);

/// Shortest round-trip decimal of the value, for either backend.
std::string format_decimal(double x);

/// a <= b within the backend tolerance.
template <Scalar S>
bool le_tol(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a <= b;
  } else {
    return a <= b + ScalarTraits<S>::tolerance();
  }
}

/// a == b within the backend tolerance.
template <Scalar S>
bool eq_tol(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    return abs_of(a - b) <= ScalarTraits<S>::tolerance();
  }
}

}  // namespace bpb4
