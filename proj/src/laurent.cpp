#include "tempered/laurent.hpp"

#include <sstream>

namespace tempered {

LaurentPolynomial::LaurentPolynomial(Terms terms) {
  for (auto& [e, c] : terms)
    if (!c.is_zero()) terms_.emplace(e, c);
}

LaurentPolynomial LaurentPolynomial::monomial(Exponent e, Coefficient c) {
  LaurentPolynomial p;
  p.add_term(e, c);
  return p;
}

void LaurentPolynomial::add_term(Exponent e, const Coefficient& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  Coefficient sum = (it->second.is_exact() && c.is_exact())
                        ? Coefficient(it->second.exact() + c.exact())
                        : Coefficient(it->second.value() + c.value());
  if (sum.is_zero())
    terms_.erase(it);
  else
    it->second = sum;
}

Coefficient LaurentPolynomial::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coefficient::integer(0) : it->second;
}

std::complex<double> LaurentPolynomial::evaluate(std::complex<double> x1, std::complex<double> x2) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [e, c] : terms_) sum += c.value() * std::pow(x1, e[0]) * std::pow(x2, e[1]);
  return sum;
}

LaurentPolynomial LaurentPolynomial::invert_x1() const {
  LaurentPolynomial p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(Exponent{-e[0], e[1]}, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::invert_x2() const {
  LaurentPolynomial p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(Exponent{e[0], -e[1]}, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::swap_variables() const {
  LaurentPolynomial p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(Exponent{e[1], e[0]}, c);
  return p;
}

std::string LaurentPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*x1^" << e[0] << "*x2^" << e[1];
  }
  return first ? "0" : os.str();
}

}  // namespace tempered
