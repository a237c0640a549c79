#include "bpb4/scalar.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <stdexcept>
#include <string>

namespace bpb4 {
namespace {

std::string trimmed(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// [sign] digits [. digits] [(e|E) [sign] digits]
Rational parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string int_part;
  std::string frac_part;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    int_part += s[pos++];
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      frac_part += s[pos++];
    }
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string exp_text;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) exp_text += s[pos++];
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos++];
    }
    if (digits.empty() || digits.size() > 6) {
      throw std::invalid_argument("bad exponent in '" + s + "'");
    }
    exponent = std::stol(exp_text + digits);
  }
  if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");

  mpz_class mantissa(int_part.empty() ? std::string("0") + frac_part : int_part + frac_part);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  const std::string s = trimmed(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);

  std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  const bool negative = !num.empty() && num[0] == '-';
  if (!num.empty() && (num[0] == '-' || num[0] == '+')) num.erase(0, 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

template <>
double parse_scalar<double>(std::string_view text) {
  const std::string s = trimmed(text);
  if (s.find('/') != std::string::npos) {
    return parse_scalar<Rational>(s).get_d();
  }
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return value;
}

std::string format_scalar(const Rational& x) { return x.get_str(); }

std::string format_scalar(double x) { return format_decimal(x); }

std::string format_decimal(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

double to_double(const Rational& x) {
  const double d = x.get_d();
  const double away = std::nextafter(d, x < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(away)) return d;
  const Rational lo_err = abs_of(Rational(x - Rational(d)));
  const Rational hi_err = abs_of(Rational(x - Rational(away)));
  return hi_err < lo_err ? away : d;
}

}  // namespace bpb4
