#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "tempered/exact.hpp"

namespace tempered {

using Exponent = std::array<int, 2>;

/// Finite sum of c_e x1^e1 x2^e2. Terms are kept in lexicographic exponent order and
/// zero coefficients are never stored.
class LaurentPolynomial {
 public:
  using Terms = std::map<Exponent, Coefficient>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Terms terms);

  static LaurentPolynomial monomial(Exponent e, Coefficient c = Coefficient::integer(1));

  /// Adds c to the coefficient at e, dropping the term if it cancels (exact terms only
  /// cancel exactly).
  void add_term(Exponent e, const Coefficient& c);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Coefficient coefficient(Exponent e) const;

  std::complex<double> evaluate(std::complex<double> x1, std::complex<double> x2) const;

  /// Substitutions used by symmetry tests.
  LaurentPolynomial invert_x1() const;
  LaurentPolynomial invert_x2() const;
  LaurentPolynomial swap_variables() const;

  std::string to_string() const;

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

}  // namespace tempered
