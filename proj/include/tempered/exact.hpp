#pragma once

#include <complex>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tempered {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational re + i*im, exact.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  std::complex<double> to_complex() const;
  std::string to_string() const;

  friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
};

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a);

/// A coefficient of a Laurent polynomial. Exact input keeps its exact value; floating
/// input carries only the double approximation.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(ExactComplex exact);  // NOLINT(google-explicit-constructor)
  Coefficient(std::complex<double> value) : value_(value) {}  // NOLINT
  static Coefficient integer(long v) { return Coefficient(ExactComplex{Rational(v), Rational(0)}); }

  bool is_exact() const { return exact_.has_value(); }
  const ExactComplex& exact() const;
  std::complex<double> value() const { return value_; }
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b);

 private:
  std::complex<double> value_{0.0, 0.0};
  std::optional<ExactComplex> exact_;
};

/// The coefficient in working precision T; exact values are rounded once, directly to T.
template <class T>
std::complex<T> coefficient_as(const Coefficient& c) {
  if (!c.is_exact()) return {static_cast<T>(c.value().real()), static_cast<T>(c.value().imag())};
  return {c.exact().re.template convert_to<T>(), c.exact().im.template convert_to<T>()};
}

/// Parses "3", "-3/2", "0.25", "i", "-2i", "1/2+3/4i", "1-i". Decimal literals give an
/// inexact coefficient. Throws ErrorCode::ParseError.
Coefficient parse_coefficient(const std::string& text);

}  // namespace tempered
