#pragma once

// Root tracking and cycle quadrature over the x1-projection of a plane curve, templated
// on the working precision. Explicitly instantiated for double and long double.

#include <array>
#include <complex>
#include <limits>
#include <vector>

#include "tempered/error.hpp"
#include "tempered/laurent.hpp"
#include "tempered/plane_curve.hpp"

namespace tempered::engine {

/// Straight segment a -> b, or circular arc around center a starting at b sweeping `sweep`
/// radians (positive = counterclockwise).
template <class T>
struct Segment {
  bool arc = false;
  Cx<T> a, b;
  T sweep = 0;

  static Segment line(Cx<T> from, Cx<T> to) { return {false, from, to, 0}; }
  static Segment circle_arc(Cx<T> center, Cx<T> start, T sweep) { return {true, center, start, sweep}; }

  Cx<T> point(T t) const { return arc ? a + (b - a) * std::polar(T(1), sweep * t) : a + (b - a) * t; }
  Cx<T> deriv(T t) const { return arc ? Cx<T>(0, sweep) * (b - a) * std::polar(T(1), sweep * t) : b - a; }
  Cx<T> start() const { return arc ? b : a; }
  Cx<T> end() const { return point(T(1)); }
};

/// All sheets followed along one segment; knot i holds roots r[i][s] and dr/dt.
template <class T>
struct Track {
  std::vector<T> t;
  std::vector<std::vector<Cx<T>>> r, dr;
};

/// Integrals along a path for one starting sheet. J is the integral of
/// Log(x1 / x1(start)) dlog x2 with the branch continued along the path; D1 and D2 are
/// the continued increments of log x1 and log x2.
template <class T>
struct PathIntegrals {
  std::vector<Cx<T>> omega;
  T eta = 0;
  Cx<T> J{0}, D1{0}, D2{0};

  PathIntegrals& then(const PathIntegrals& b) {
    if (omega.empty()) omega.assign(b.omega.size(), Cx<T>{0});
    for (std::size_t k = 0; k < omega.size(); ++k) omega[k] += b.omega[k];
    eta += b.eta;
    J += b.J + D1 * b.D2;
    D1 += b.D1;
    D2 += b.D2;
    return *this;
  }

  PathIntegrals reversed() const {
    PathIntegrals r;
    for (const auto& w : omega) r.omega.push_back(-w);
    r.eta = -eta;
    r.J = -(J - D1 * D2);
    r.D1 = -D1;
    r.D2 = -D2;
    return r;
  }
};

struct QuadratureStats {
  long evaluations = 0;
  long intervals = 0;
};

/// A fiber F~(x1, x2) = 0 with holomorphic differentials x1^{m1-1} x2^{m2-1} dx1 / F~_x2.
template <class T>
class CurveModel {
 public:
  CurveModel(BivariatePoly<T> F, std::vector<Exponent> differentials);

  int sheets() const { return F_.deg2(); }
  int genus() const { return static_cast<int>(diffs_.size()); }
  const BivariatePoly<T>& polynomial() const { return F_; }

  /// Roots of F(x1, .) in lexicographic order of (real, imag).
  std::vector<Cx<T>> sorted_roots(Cx<T> x1) const;

  /// Follows the given roots along seg. Throws SheetCollision when the step size underflows.
  Track<T> track(const Segment<T>& seg, const std::vector<Cx<T>>& start) const;

  /// Per-sheet integrals along a tracked segment, adaptive Gauss-Kronrod 7/15 on each knot
  /// interval with absolute tolerance `tol` per unit parameter.
  std::vector<PathIntegrals<T>> integrate(const Segment<T>& seg, const Track<T>& tr, T tol,
                                          QuadratureStats* stats = nullptr) const;

  /// The sheet derivative dx2/dt at a point.
  Cx<T> slope(Cx<T> x1, Cx<T> x1dot, Cx<T> x2) const;

 private:
  bool newton(const UniPoly<T>& c, Cx<T>& r, int max_iter, Cx<T>* first_step = nullptr) const;
  std::vector<Cx<T>> sample(const Segment<T>& seg, const Track<T>& tr, std::size_t i, T t) const;
  void integrand(const Segment<T>& seg, T t, const std::vector<Cx<T>>& roots, Cx<T> log_base,
                 Cx<T>* out) const;

  BivariatePoly<T> F_;
  std::vector<Exponent> diffs_;
  T eps_;
};

/// BivariatePoly in precision T for p * x^shift (shift clears denominators).
template <class T>
BivariatePoly<T> bivariate_from(const LaurentPolynomial& p, Exponent shift);

extern template class CurveModel<double>;
extern template class CurveModel<long double>;
extern template BivariatePoly<double> bivariate_from<double>(const LaurentPolynomial&, Exponent);
extern template BivariatePoly<long double> bivariate_from<long double>(const LaurentPolynomial&, Exponent);

}  // namespace tempered::engine
