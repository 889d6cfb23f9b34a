#pragma once

#include <string>
#include <vector>

#include "tempered/exact.hpp"
#include "tempered/polygon.hpp"

namespace tempered {

/// Dense integer polynomial, ascending powers.
using IntPoly = std::vector<BigInt>;

IntPoly cyclotomic_polynomial(unsigned d);
unsigned euler_phi(unsigned d);

/// True iff q = c * t^k * prod Phi_d(t)^e_d. Rational coefficients have their content
/// removed first; the Gaussian overload throws NonIntegerCoefficients for non-real input.
bool is_cyclotomic_product(const std::vector<Rational>& q);
bool is_cyclotomic_product(const IntPoly& q);
bool is_cyclotomic_product(const std::vector<ExactComplex>& q);

struct EdgeVerdict {
  EdgePolynomial polynomial;
  bool cyclotomic = false;
  std::string note;
};

struct TemperednessReport {
  std::vector<EdgeVerdict> edges;
  bool tempered = false;
};

/// Every edge polynomial must be cyclotomic up to +-t^k. Throws InexactEdgeCoefficients
/// when an edge carries a floating-point coefficient.
TemperednessReport is_tempered(const LaurentPolynomial& p);
TemperednessReport is_tempered(const LaurentPolynomial& p, const NewtonPolygon& polygon);

}  // namespace tempered
