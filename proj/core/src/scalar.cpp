#include "dwpf/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "dwpf/error.hpp"

namespace dwpf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::PoleAtEvaluationPoint: return "PoleAtEvaluationPoint";
    case ErrorKind::InsufficientDerivatives: return "InsufficientDerivatives";
    case ErrorKind::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorKind::DegenerateEpsilons: return "DegenerateEpsilons";
    case ErrorKind::CostGuard: return "CostGuard";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::InvalidArgument,
              "not a number: \"" + std::string(text) + "\"");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
      exp_negative = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      bad_number(text);
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(
                                           exponent < 0 ? -exponent : exponent));
  Rational q = exponent >= 0 ? Rational(mantissa * scale)
                             : Rational(mantissa, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) bad_number(text);
    mpz_class n(std::string(num_digits), 10);
    if (num.front() == '-') n = -n;
    mpz_class d(std::string(den), 10);
    if (d == 0)
      throw Error(ErrorKind::InvalidArgument,
                  "zero denominator in \"" + std::string(text) + "\"");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

double to_double(const Rational& q) {
  constexpr unsigned exact_bits = 53;
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= exact_bits &&
      mpz_sizeinbase(q.get_den_mpz_t(), 2) <= exact_bits)
    return q.get_num().get_d() / q.get_den().get_d();
  return q.get_d();
}

namespace {

// Decimal literals go through strtod, which rounds correctly; fractions fall
// back to to_double.
double real_of(std::string_view s) {
  Rational q = parse_rational(s);
  if (s.find('/') != std::string_view::npos) return to_double(q);
  std::string copy(s);
  return std::strtod(copy.c_str(), nullptr);
}

}  // namespace

namespace {

struct Split {
  std::string_view re, im;
  bool is_complex = false;
};

// "a", "bi", "a+bi", "a-i", ... The split point is the last sign that is
// neither leading nor part of an exponent.
Split split_complex(std::string_view text) {
  if (text.empty()) bad_number(text);
  if (text.back() != 'i') return {text, {}, false};
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {{}, body, true};
  return {body.substr(0, split), body.substr(split), true};
}

std::string_view unit_imag(std::string_view s) {
  if (s.empty() || s == "+") return "1";
  if (s == "-") return "-1";
  return s;
}

}  // namespace

Complex parse_complex(std::string_view text, bool* is_complex) {
  Split parts = split_complex(text);
  if (is_complex) *is_complex = parts.is_complex;
  if (!parts.is_complex) return {real_of(parts.re), 0.0};
  return {parts.re.empty() ? 0.0 : real_of(parts.re), real_of(unit_imag(parts.im))};
}

ExactComplex parse_complex_exact(std::string_view text) {
  Split parts = split_complex(text);
  ExactComplex out;
  out.is_complex = parts.is_complex;
  if (!parts.re.empty()) out.re = parse_rational(parts.re);
  if (parts.is_complex) out.im = parse_rational(unit_imag(parts.im));
  return out;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace dwpf
