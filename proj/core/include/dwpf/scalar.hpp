#pragma once

// The two scalar fields every computation runs over. A computation picks one
// of them as a template argument, so exact and floating values never meet in
// the same matrix.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <string_view>

namespace dwpf {

/// Exact rational. GMP keeps every mpq_class result canonical (reduced, with a
/// positive denominator); only hand-assembled num/den pairs need
/// canonicalize().
using Rational = mpq_class;
using Complex = std::complex<double>;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, Complex>;

enum class Mode { Exact, Float };

// Nearest double. mpq get_d truncates, which breaks round trips of short
// decimals such as 0.1.
double to_double(const Rational& q);

template <Scalar T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::Exact;
  static constexpr std::string_view name = "exact";
  static bool is_finite(const Rational&) { return true; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr Mode mode = Mode::Float;
  static constexpr std::string_view name = "f64";
  static bool is_finite(const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex from_rational(const Rational& q) { return {to_double(q), 0.0}; }
};

template <Scalar T>
T from_rational(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

template <Scalar T>
double magnitude(const T& x) {
  return ScalarTraits<T>::magnitude(x);
}

template <Scalar T>
bool is_finite(const T& x) {
  return ScalarTraits<T>::is_finite(x);
}

/// Relative tolerance used by every float-mode comparison in the library.
inline constexpr double kFloatRelTol = 1e-9;

/// Exact equality in exact mode; relative error below kFloatRelTol otherwise.
template <Scalar T>
bool agrees(const T& a, const T& b, double rel_tol = kFloatRelTol) {
  if constexpr (std::same_as<T, Rational>) {
    return a == b;
  } else {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= rel_tol * scale;
  }
}

/// Parses "p/q", an integer, or a decimal literal with optional exponent
/// ("-1.25e-3") into the exact rational it denotes. Throws Error on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a real rational or a complex literal ("1.5", "2-0.5i", "3i").
/// Sets is_complex when an imaginary part was present.
Complex parse_complex(std::string_view text, bool* is_complex = nullptr);

/// Real and imaginary parts of a complex literal, kept exact.
struct ExactComplex {
  Rational re;
  Rational im;
  bool is_complex = false;
};

ExactComplex parse_complex_exact(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string format_rational(const Rational& q);

}  // namespace dwpf
