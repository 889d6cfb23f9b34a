#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tempered/cyclotomic.hpp"
#include "tempered/family_file.hpp"
#include "tempered/laurent.hpp"
#include "tempered/plane_curve.hpp"
#include "tempered/polygon.hpp"

namespace tempered {

using ParamVector = std::vector<std::complex<double>>;

/// F_a = sum_i c_i x^{l_i} + sum_j a_j x^{m_j}: fixed exact boundary coefficients and
/// free coefficients at every interior lattice point.
class TemperedFamily {
 public:
  /// Throws ParseError when the declared free monomials are not exactly the interior
  /// points of the Newton polygon, or a fixed term sits in the interior.
  TemperedFamily(LaurentPolynomial fixed_terms, std::vector<Exponent> interior, std::string name = {});
  static TemperedFamily from_definition(const FamilyDefinition& def);
  static TemperedFamily from_file(const std::string& path);

  const std::string& name() const { return name_; }
  const LaurentPolynomial& boundary_terms() const { return fixed_; }
  const std::vector<Exponent>& interior_monomials() const { return interior_; }
  const NewtonPolygon& polygon() const { return polygon_; }
  const TemperednessReport& temperedness() const { return report_; }
  bool tempered() const { return report_.tempered; }
  int genus() const { return static_cast<int>(interior_.size()); }

  /// Stable textual identity used for cache keys.
  const std::string& canonical_text() const { return canonical_; }

  LaurentPolynomial fiber(const ParamVector& a) const;

  /// Exponent shift s with x^s F_a a polynomial not divisible by x1 or x2.
  Exponent clearing_shift() const { return shift_; }

  /// The cleared polynomial x^s F_a in working precision T.
  template <class T>
  BivariatePoly<T> cleared(const std::vector<Cx<T>>& a) const;

 private:
  void check_size(std::size_t n) const;

  std::string name_;
  LaurentPolynomial fixed_;
  std::vector<Exponent> interior_;
  NewtonPolygon polygon_;
  TemperednessReport report_;
  Exponent shift_{};
  std::string canonical_;
};

std::complex<double> evaluate(const TemperedFamily& fam, const ParamVector& a, std::complex<double> x1,
                              std::complex<double> x2);

struct Partials {
  std::complex<double> f, f_x1, f_x2;
};
Partials partials(const LaurentPolynomial& p, std::complex<double> x1, std::complex<double> x2);
Partials partials(const TemperedFamily& fam, const ParamVector& a, std::complex<double> x1,
                  std::complex<double> x2);

struct NondegeneracyTolerances {
  double low = 1e-10;
  double high = 1e-6;
};

struct FiberReport {
  bool nondegenerate = false;
  bool edges_squarefree = false;
  double min_residual = 0;  // normalized residual of the closest torus critical point
  std::complex<double> witness_x1, witness_x2;
  int genus = 0;
};

/// Full report; never throws for ambiguity (the caller reads min_residual).
FiberReport fiber_report(const TemperedFamily& fam, const ParamVector& a, const NondegeneracyTolerances& tol = {});

/// True iff the fiber is Delta-regular. Throws NumericallyAmbiguous when the smallest
/// singular-system residual falls in [tol.low, tol.high].
bool is_nondegenerate_fiber(const TemperedFamily& fam, const ParamVector& a, const NondegeneracyTolerances& tol = {});

int genus(const TemperedFamily& fam);

/// d F_a / d a_j for 1 <= j <= g.
LaurentPolynomial dF_da(const TemperedFamily& fam, int j);

/// Squarefreeness of an exact rational edge polynomial.
bool is_squarefree(const EdgePolynomial& ep);

// ---------------------------------------------------------------------------

template <class T>
BivariatePoly<T> TemperedFamily::cleared(const std::vector<Cx<T>>& a) const {
  check_size(a.size());
  int d1 = 0, d2 = 0;
  for (const auto& v : polygon_.vertices) {
    d1 = std::max(d1, v[0] + shift_[0]);
    d2 = std::max(d2, v[1] + shift_[1]);
  }
  BivariatePoly<T> out;
  out.c.assign(d2 + 1, UniPoly<T>(d1 + 1, Cx<T>{0}));
  for (const auto& [e, c] : fixed_.terms()) out.c[e[1] + shift_[1]][e[0] + shift_[0]] += coefficient_as<T>(c);
  for (std::size_t j = 0; j < interior_.size(); ++j)
    out.c[interior_[j][1] + shift_[1]][interior_[j][0] + shift_[0]] += a[j];
  return out;
}

}  // namespace tempered
