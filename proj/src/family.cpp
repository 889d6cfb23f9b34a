#include "tempered/family.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tempered/error.hpp"

namespace tempered {

namespace {

NewtonPolygon polygon_of(const LaurentPolynomial& fixed, const std::vector<Exponent>& interior) {
  std::vector<LatticePoint> pts(interior.begin(), interior.end());
  for (const auto& [e, c] : fixed.terms()) pts.push_back(e);
  return convex_lattice_polygon(pts);
}

}  // namespace

TemperedFamily::TemperedFamily(LaurentPolynomial fixed_terms, std::vector<Exponent> interior, std::string name)
    : name_(std::move(name)), fixed_(std::move(fixed_terms)), interior_(std::move(interior)) {
  polygon_ = polygon_of(fixed_, interior_);
  std::set<Exponent> declared(interior_.begin(), interior_.end());
  std::set<Exponent> actual(polygon_.interior_points.begin(), polygon_.interior_points.end());
  if (declared.size() != interior_.size()) throw Error(ErrorCode::ParseError, "free monomial declared twice");
  if (declared != actual) {
    std::ostringstream os;
    os << "free coefficients must sit exactly at the " << actual.size() << " interior lattice points {";
    for (const auto& p : actual) os << " (" << p[0] << "," << p[1] << ")";
    os << " }";
    throw Error(ErrorCode::ParseError, os.str());
  }
  for (const auto& [e, c] : fixed_.terms())
    if (polygon_.is_interior(e))
      throw Error(ErrorCode::ParseError, "fixed coefficient at interior point (" + std::to_string(e[0]) + "," +
                                             std::to_string(e[1]) + ")");

  report_ = is_tempered(fixed_, polygon_);

  int m1 = polygon_.vertices[0][0], m2 = polygon_.vertices[0][1];
  for (const auto& v : polygon_.vertices) m1 = std::min(m1, v[0]), m2 = std::min(m2, v[1]);
  shift_ = {-m1, -m2};

  std::ostringstream canon;
  canon << "name:" << name_ << "\n";
  for (const auto& [e, c] : fixed_.terms()) canon << e[0] << "," << e[1] << ":" << c.to_string() << "\n";
  for (std::size_t j = 0; j < interior_.size(); ++j)
    canon << interior_[j][0] << "," << interior_[j][1] << ":a_" << j + 1 << "\n";
  canonical_ = canon.str();
}

TemperedFamily TemperedFamily::from_definition(const FamilyDefinition& def) {
  std::vector<Exponent> interior;
  for (const auto& s : def.symbols) interior.push_back(s.exponent);
  return TemperedFamily(def.fixed_terms, interior, def.name);
}

TemperedFamily TemperedFamily::from_file(const std::string& path) {
  return from_definition(load_family_file(path));
}

void TemperedFamily::check_size(std::size_t n) const {
  if (n != interior_.size())
    throw Error(ErrorCode::IndexOutOfRange, "expected " + std::to_string(interior_.size()) + " parameters, got " +
                                                std::to_string(n));
}

LaurentPolynomial TemperedFamily::fiber(const ParamVector& a) const {
  check_size(a.size());
  LaurentPolynomial p = fixed_;
  for (std::size_t j = 0; j < interior_.size(); ++j) p.add_term(interior_[j], Coefficient(a[j]));
  return p;
}

Partials partials(const LaurentPolynomial& p, std::complex<double> x1, std::complex<double> x2) {
  if (x1 == 0.0 || x2 == 0.0) throw Error(ErrorCode::ZeroCoordinate, "evaluation point must lie in the torus");
  Partials out{};
  for (const auto& [e, c] : p.terms()) {
    auto m = c.value() * std::pow(x1, e[0]) * std::pow(x2, e[1]);
    out.f += m;
    out.f_x1 += m * double(e[0]) / x1;
    out.f_x2 += m * double(e[1]) / x2;
  }
  return out;
}

Partials partials(const TemperedFamily& fam, const ParamVector& a, std::complex<double> x1, std::complex<double> x2) {
  return partials(fam.fiber(a), x1, x2);
}

std::complex<double> evaluate(const TemperedFamily& fam, const ParamVector& a, std::complex<double> x1,
                              std::complex<double> x2) {
  return partials(fam, a, x1, x2).f;
}

bool is_squarefree(const EdgePolynomial& ep) {
  // Euclid over Q(i) on q and q'.
  using Poly = std::vector<ExactComplex>;
  auto trim = [](Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  auto inverse = [](const ExactComplex& z) {
    Rational n = z.re * z.re + z.im * z.im;
    return ExactComplex{z.re / n, -z.im / n};
  };
  Poly q;
  for (const auto& c : ep.coeffs) q.push_back(c.is_zero() ? ExactComplex{} : c.exact());
  trim(q);
  Poly dq;
  for (std::size_t k = 1; k < q.size(); ++k) dq.push_back(q[k] * ExactComplex{Rational(static_cast<long>(k)), 0});
  trim(dq);
  Poly a = q, b = dq;
  while (!b.empty()) {
    Poly r = a;
    ExactComplex lead_inv = inverse(b.back());
    while (r.size() >= b.size()) {
      ExactComplex f = r.back() * lead_inv;
      std::size_t off = r.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) r[off + k] = r[off + k] + (-(f * b[k]));
      r.pop_back();
      trim(r);
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;  // gcd is a constant
}

FiberReport fiber_report(const TemperedFamily& fam, const ParamVector& a, const NondegeneracyTolerances& tol) {
  FiberReport rep;
  rep.genus = fam.genus();
  rep.edges_squarefree = true;
  for (const auto& ep : edge_polynomials(fam.boundary_terms(), fam.polygon()))
    rep.edges_squarefree = rep.edges_squarefree && is_squarefree(ep);

  BivariatePoly<double> F = fam.cleared<double>(a);
  BivariatePoly<double> F1 = F.d_x1(), F2 = F.d_x2();
  BivariatePoly<double> F11 = F1.d_x1(), F12 = F1.d_x2(), F22 = F2.d_x2();
  rep.min_residual = std::numeric_limits<double>::infinity();

  auto residual = [&](Cx<double> x1, Cx<double> x2) {
    Cx<double> f, f1, f2;
    F.eval(x1, x2, f, f1, f2);
    return (std::abs(f) + std::abs(x1 * f1) + std::abs(x2 * f2)) / F.magnitude(x1, x2);
  };

  for (auto [x1, x2] : critical_points_of_projection(F)) {
    // Gauss-Newton on (F, F_x1, F_x2) = 0.
    using M32 = Eigen::Matrix<Cx<double>, 3, 2>;
    using V3 = Eigen::Matrix<Cx<double>, 3, 1>;
    Cx<double> bx1 = x1, bx2 = x2;
    double best = residual(x1, x2);
    for (int it = 0; it < 30 && best > 1e-15; ++it) {
      Cx<double> f, f1, f2;
      F.eval(x1, x2, f, f1, f2);
      M32 J;
      J << f1, f2, F11(x1, x2), F12(x1, x2), F12(x1, x2), F22(x1, x2);
      V3 r(f, f1, f2);
      Eigen::Matrix<Cx<double>, 2, 1> step = J.colPivHouseholderQr().solve(r);
      if (!std::isfinite(std::abs(step(0))) || std::abs(step(0)) > 0.5 * (1 + std::abs(x1))) break;
      x1 -= step(0);
      x2 -= step(1);
      double res = residual(x1, x2);
      if (res < best) best = res, bx1 = x1, bx2 = x2;
    }
    double s1 = std::abs(bx1), s2 = std::abs(bx2);
    if (s1 < 1e-8 || s2 < 1e-8 || s1 > 1e8 || s2 > 1e8) continue;
    if (best < rep.min_residual) {
      rep.min_residual = best;
      rep.witness_x1 = bx1;
      rep.witness_x2 = bx2;
    }
  }
  rep.nondegenerate = rep.edges_squarefree && rep.min_residual > tol.high;
  return rep;
}

bool is_nondegenerate_fiber(const TemperedFamily& fam, const ParamVector& a, const NondegeneracyTolerances& tol) {
  FiberReport rep = fiber_report(fam, a, tol);
  if (!rep.edges_squarefree) return false;
  if (rep.min_residual < tol.low) return false;
  if (rep.min_residual <= tol.high)
    throw Error(ErrorCode::NumericallyAmbiguous,
                "singular-system residual " + std::to_string(rep.min_residual) + " between tolerances");
  return true;
}

int genus(const TemperedFamily& fam) { return fam.genus(); }

LaurentPolynomial dF_da(const TemperedFamily& fam, int j) {
  if (j < 1 || j > fam.genus())
    throw Error(ErrorCode::IndexOutOfRange, "j = " + std::to_string(j) + " outside 1.." + std::to_string(fam.genus()));
  return LaurentPolynomial::monomial(fam.interior_monomials()[j - 1]);
}

}  // namespace tempered
