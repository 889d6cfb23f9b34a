#include "tempered/exact.hpp"

#include <cctype>

#include "tempered/error.hpp"

namespace tempered {

namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

[[noreturn]] void fail(const std::string& text, const std::string& why) {
  throw Error(ErrorCode::ParseError, "coefficient '" + text + "': " + why);
}

// Parses an unsigned real literal: digits, digits/digits, or a decimal.
// Returns false in `exact` for decimals.
Rational parse_unsigned_real(const std::string& s, const std::string& whole, bool& exact) {
  if (s.empty()) fail(whole, "missing number");
  auto slash = s.find('/');
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail(whole, "malformed fraction");
    BigInt d(den);
    if (d == 0) fail(whole, "zero denominator");
    return Rational(BigInt(num), d);
  }
  if (all_digits(s)) return Rational(BigInt(s));
  // decimal literal
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(whole, "not a number");
  }
  if (pos != s.size()) fail(whole, "trailing characters");
  exact = false;
  return Rational(v);
}

}  // namespace

std::complex<double> ExactComplex::to_complex() const { return {to_double(re), to_double(im)}; }

std::string ExactComplex::to_string() const {
  if (im == 0) return rational_string(re);
  std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : rational_string(im) + "i";
  if (re == 0) return imag;
  if (im > 0) return rational_string(re) + "+" + imag;
  return rational_string(re) + imag;
}

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }

Coefficient::Coefficient(ExactComplex exact) : value_(exact.to_complex()), exact_(std::move(exact)) {}

const ExactComplex& Coefficient::exact() const {
  if (!exact_) throw Error(ErrorCode::InexactEdgeCoefficients, "coefficient " + to_string() + " is not exact");
  return *exact_;
}

bool Coefficient::is_zero() const { return exact_ ? exact_->is_zero() : value_ == std::complex<double>(0.0, 0.0); }

std::string Coefficient::to_string() const {
  if (exact_) return exact_->to_string();
  std::string s = std::to_string(value_.real());
  if (value_.imag() != 0.0) s += (value_.imag() > 0 ? "+" : "") + std::to_string(value_.imag()) + "i";
  return s;
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  if (a.exact_ || b.exact_) return false;
  return a.value_ == b.value_;
}

Coefficient parse_coefficient(const std::string& input) {
  std::string s;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(input, "empty");

  // Split into signed summands at '+'/'-' that are not leading and not exponent signs.
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      parts.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  parts.push_back(s.substr(start));
  if (parts.size() > 2) fail(input, "too many terms");

  bool exact = true;
  ExactComplex value;
  bool seen_real = false, seen_imag = false;
  double re_d = 0.0, im_d = 0.0;
  for (std::string p : parts) {
    int sign = 1;
    if (p[0] == '+' || p[0] == '-') {
      sign = (p[0] == '-') ? -1 : 1;
      p = p.substr(1);
    }
    bool imaginary = !p.empty() && p.back() == 'i';
    if (imaginary) {
      p.pop_back();
      if (!p.empty() && p.back() == '*') p.pop_back();
      if (p.empty()) p = "1";
    }
    bool part_exact = true;
    Rational r = parse_unsigned_real(p, input, part_exact);
    if (!part_exact) exact = false;
    double d = part_exact ? to_double(r) : std::stod(p);
    if (imaginary) {
      if (seen_imag) fail(input, "two imaginary parts");
      seen_imag = true;
      value.im = sign * r;
      im_d = sign * d;
    } else {
      if (seen_real) fail(input, "two real parts");
      seen_real = true;
      value.re = sign * r;
      re_d = sign * d;
    }
  }
  if (exact) return Coefficient(value);
  return Coefficient(std::complex<double>(re_d, im_d));
}

}  // namespace tempered
