#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tempered/error.hpp"
#include "tempered/regulator.hpp"

using namespace tempered;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

TemperedFamily square() { return TemperedFamily::from_file(TEMPERED_FIXTURES "/square.family"); }
TemperedFamily genus2() { return TemperedFamily::from_file(TEMPERED_FIXTURES "/genus2.family"); }

std::vector<C> rectangle(double x0, double x1, double y0, double y1) {
  return {C(x0, y0), C(x1, y0), C(x1, y1), C(x0, y1), C(x0, y0)};
}

// Independent integrator for the square family: explicit quadratic roots
// x2^2 + b x2 + 1 = 0 with b = x1 + 1/x1 + a, continued by nearest match, and
// composite Simpson on each polyline edge.
double eta_oracle(C a, const std::vector<C>& path, C start_root, int n) {
  C x2 = start_root;
  auto root = [&](C x1) {
    C b = x1 + 1.0 / x1 + a, d = std::sqrt(b * b - 4.0);
    C r1 = (-b + d) / 2.0, r2 = (-b - d) / 2.0;
    x2 = std::abs(r1 - x2) < std::abs(r2 - x2) ? r1 : r2;
    return x2;
  };
  auto eta = [&](C x1, C dx1) {
    C r = root(x1), b = x1 + 1.0 / x1 + a, db = (1.0 - 1.0 / (x1 * x1)) * dx1;
    C dr = -db * r / (2.0 * r + b);
    return std::log(std::abs(x1)) * (dr / r).imag() - std::log(std::abs(r)) * (dx1 / x1).imag();
  };
  double total = 0;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    C p = path[e], d = path[e + 1] - path[e];
    double h = 1.0 / n, s = eta(p, d);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * eta(p + d * (k * h), d);
    s += eta(p + d, d);
    total += s * h / 3;
  }
  return total;
}

RegulatorVector regulator(const TemperedFamily& fam, const ParamVector& a, CurveFiber* f = nullptr,
                          const FiberPlan* reuse = nullptr) {
  return regulator_vector(fam, a, {}, reuse, f);
}

Eigen::MatrixXd fd_jacobian(const TemperedFamily& fam, const ParamVector& a, const FiberPlan& plan, double h) {
  const long g = static_cast<long>(a.size());
  Eigen::MatrixXd fd(2 * g, 2 * g);
  for (long c = 0; c < 2 * g; ++c) {
    auto ap = a, am = a;
    C d = c % 2 == 0 ? C(h, 0) : C(0, h);
    ap[c / 2] += d;
    am[c / 2] -= d;
    auto rp = regulator(fam, ap, nullptr, &plan), rm = regulator(fam, am, nullptr, &plan);
    for (long k = 0; k < 2 * g; ++k) fd(k, c) = (rp.eta_periods[k] - rm.eta_periods[k]) / (2 * h);
  }
  return fd;
}

}  // namespace

TEST_CASE("eta period against an independent integrator") {
  const C a = 2.5;
  CurveFiber f;
  auto rv = regulator(square(), {a}, &f);
  // Encloses the real branch points near -0.234 and -4.266 but not x1 = 0.
  auto rect = rectangle(-4.6, -0.12, -0.3, 0.3);
  for (int sheet = 0; sheet < 2; ++sheet) {
    PolylineLoop loop{rect, sheet};
    auto v = integrate_cycle(f, as_cycle(loop));
    C start = sheets_at(f, rect[0])[sheet];
    double oracle = eta_oracle(a, rect, start, 20000);
    CHECK(std::abs(v.eta) > 0.1);
    CHECK(std::abs(v.eta - oracle) < 1e-6);
    CHECK(std::abs(v.full.imag() - v.eta) < 1e-8);

    // Express the rectangle in the basis through its omega-periods and compare eta.
    auto pm = period_matrix(f);
    C p1 = pm.Pi(0, 0), p2 = pm.Pi(0, 1), w = v.omega[0];
    Eigen::Matrix2d M;
    M << p1.real(), p2.real(), p1.imag(), p2.imag();
    Eigen::Vector2d mn = M.colPivHouseholderQr().solve(Eigen::Vector2d(w.real(), w.imag()));
    double m = std::round(mn(0)), n = std::round(mn(1));
    CHECK(std::abs(mn(0) - m) < 1e-8);
    CHECK(std::abs(mn(1) - n) < 1e-8);
    CHECK(std::abs(v.eta - (m * rv.eta_periods[0] + n * rv.eta_periods[1])) < 1e-8);
  }
}

TEST_CASE("eta vanishes where both terms do") {
  // x2^2 = x1 over |x1| = 1: log|x1| = log|x2| = 0 pointwise. Two turns close the loop.
  LaurentPolynomial p;
  p.add_term({0, 2}, Coefficient::integer(1));
  p.add_term({1, 0}, Coefficient::integer(-1));
  auto f = build_fiber(p);
  std::vector<C> twice;
  for (int k = 0; k <= 48; ++k) twice.push_back(std::polar(1.0, 4 * kPi * k / 48));
  auto v = integrate_cycle(f, as_cycle(PolylineLoop{twice, 0}));
  CHECK(std::abs(v.eta) < 1e-12);
}

TEST_CASE("closedness on contractible loops") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3, 3), unit(0, 1);
  auto fam = square();
  for (int trial = 0; trial < 6; ++trial) {
    ParamVector a{C(u(rng), u(rng))};
    if (!is_nondegenerate_fiber(fam, a)) continue;
    auto f = build_fiber(fam, a);
    // a small random quadrilateral well inside one lasso-free region
    C c = f.plan.base_point;
    double r = 0.2 * *std::min_element(f.plan.radii.begin(), f.plan.radii.end());
    std::vector<C> loop;
    for (int k = 0; k < 4; ++k) loop.push_back(c + std::polar(r * (0.5 + unit(rng)), kPi / 2 * (k + unit(rng) * 0.5)));
    loop.push_back(loop.front());
    for (int s = 0; s < f.sheets; ++s) {
      auto v = integrate_cycle(f, as_cycle(PolylineLoop{loop, s}));
      CHECK(std::abs(v.eta) < 1e-9);
      CHECK(std::abs(reduce_mod_lattice(v.full)) < 1e-9);
    }
  }
}

TEST_CASE("full periods reproduce eta periods") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const auto& fam : {square(), genus2()}) {
    for (int trial = 0; trial < 4; ++trial) {
      ParamVector a;
      for (int j = 0; j < fam.genus(); ++j) a.push_back(C(u(rng), u(rng)));
      if (!is_nondegenerate_fiber(fam, a)) continue;
      CurveFiber f;
      auto rv = regulator(fam, a, &f);
      CHECK(rv.consistency < 1e-8);
      for (std::size_t k = 0; k < f.basis.size(); ++k) {
        CHECK(std::abs(full_regulator_period(f, f.basis[k]).imag() - eta_period(f, f.basis[k])) < 1e-8);
        C back = full_regulator_period(f, f.basis[k].reversed());
        CHECK(std::abs(reduce_mod_lattice(back + rv.full_periods[k])) < 1e-8);
        CHECK(std::abs(rv.full_periods[k].real()) <= 2 * kPi * kPi + 1e-12);
      }
    }
  }
}

TEST_CASE("regulator vector preconditions and continuity") {
  auto fam = square();
  try {
    regulator(fam, {0.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NondegenerateFiberRequired);
  }

  CurveFiber f;
  const ParamVector a0{C(2.5, 0.2)};
  auto r0 = regulator(fam, a0, &f);
  auto J = regulator_jacobian(f);
  double L = 2 * J.J.norm();
  for (int k = 1; k <= 5; ++k) {
    ParamVector a{a0[0] + C(0.01 * k, -0.005 * k)};
    auto r = regulator(fam, a, nullptr, &f.plan);
    double d = 0;
    for (int c = 0; c < 2; ++c) d += std::pow(r.eta_periods[c] - r0.eta_periods[c], 2);
    CHECK(std::sqrt(d) <= L * std::abs(a[0] - a0[0]));
  }
}

TEST_CASE("real structure") {
  // Conjugation maps the fiber at a to the fiber at conj(a) and negates eta.
  auto fam = square();
  for (C a : {C(2.5, 0.7), C(-1.2, 1.9), C(5.0, -0.3)}) {
    CurveFiber f, g;
    auto r = regulator(fam, {a}, &f), rc = regulator(fam, {std::conj(a)}, &g);
    auto P = period_matrix(f).Pi, Q = period_matrix(g).Pi;
    // Q = conj(P) M for an integer M
    Eigen::Matrix2d A;
    A << P(0, 0).real(), P(0, 1).real(), -P(0, 0).imag(), -P(0, 1).imag();
    Eigen::Matrix2d B;
    B << Q(0, 0).real(), Q(0, 1).real(), Q(0, 0).imag(), Q(0, 1).imag();
    Eigen::Matrix2d M = A.inverse() * B;
    Eigen::Matrix2d Mi = M.array().round().matrix();
    CHECK((M - Mi).norm() < 1e-8);
    CHECK(std::abs(std::abs(Mi.determinant()) - 1) < 1e-12);
    Eigen::RowVector2d rv(r.eta_periods[0], r.eta_periods[1]), rvc(rc.eta_periods[0], rc.eta_periods[1]);
    CHECK((rvc + rv * Mi).norm() < 1e-8);
  }
}

TEST_CASE("Jacobian from periods matches finite differences") {
  auto fam = square();
  CurveFiber f;
  regulator(fam, {2.5}, &f);
  auto J = regulator_jacobian(f);
  auto fd = fd_jacobian(fam, {2.5}, f.plan, 1e-4);
  CHECK((J.J - fd).norm() / J.J.norm() < 1e-5);
  CHECK(J.sigma_min > 0);
  auto pm = period_matrix(f);
  double det = pm.Pi(0, 0).imag() * pm.Pi(0, 1).real() - pm.Pi(0, 0).real() * pm.Pi(0, 1).imag();
  CHECK(J.J.determinant() == doctest::Approx(det).epsilon(1e-12));
  CHECK(std::abs(det) > 0);

  auto g2 = genus2();
  const ParamVector b{C(1, 0.3), C(-0.5, 0.2)};
  CurveFiber h;
  regulator(g2, b, &h);
  auto Jg = regulator_jacobian(h);
  auto fdg = fd_jacobian(g2, b, h.plan, 1e-4);
  CHECK((Jg.J - fdg).norm() / Jg.J.norm() < 1e-5);
}

TEST_CASE("Jacobian rank in a box") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> re(0.2, 3.8), im(-1, 1);
  auto fam = square();
  int done = 0;
  while (done < 20) {
    ParamVector a{C(re(rng), im(rng))};
    if (!is_nondegenerate_fiber(fam, a)) continue;
    auto J = regulator_jacobian(fam, a);
    CHECK(J.sigma_min > 0);
    CHECK(std::isfinite(J.condition));
    ++done;
  }
}

TEST_CASE("rational reconstruction") {
  auto f = reconstruct_rational(0.75, 100, 1e-12);
  REQUIRE(f);
  CHECK(f->p == 3);
  CHECK(f->q == 4);
  auto g = reconstruct_rational(0.333333333, 100, 1e-9);
  REQUIRE(g);
  CHECK(g->p == 1);
  CHECK(g->q == 3);
  CHECK(g->residual == doctest::Approx(1.0 / 3 - 0.333333333).epsilon(1e-3));
  CHECK_FALSE(reconstruct_rational(0.7071067811, 100, 1e-9));
  CHECK(best_rational(0.7071067811, 100).q == 99);
  CHECK(best_rational(-0.5, 10).p == -1);
  CHECK(best_rational(std::numbers::pi, 1000).p == 355);
}

TEST_CASE("torsion candidates") {
  const double L = 4 * kPi * kPi;
  auto v = torsion_from_periods({C(0.75 * L, 0), C(-0.25 * L, 0)}, 100, 1e-9);
  CHECK(v.candidate);
  CHECK(v.rationals[0].p == 3);
  CHECK(v.rationals[1].q == 4);
  auto w = torsion_from_periods({C(0.7071067811 * L, 0)}, 100, 1e-9);
  CHECK_FALSE(w.candidate);
  CHECK(w.note == "non-torsion-at-this-precision");

  try {
    torsion_candidate_test(square(), {2.5}, 100, 1e-6);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrerequisiteNotExact);
  }
}

TEST_CASE("Hodge norm is basis independent") {
  CurveFiber f;
  auto rv = regulator(genus2(), {C(1, 0.3), C(-0.5, 0.2)}, &f);
  CHECK(rv.hodge_norm > 0);
  // a few elementary symplectic moves on (a1, a2, b1, b2)
  std::vector<Eigen::Matrix4d> moves(3, Eigen::Matrix4d::Identity());
  moves[0](0, 2) = 1;  // b1 += a1
  moves[1](2, 0) = -2;  // a1 -= 2 b1
  moves[2](0, 3) = 1, moves[2](1, 2) = 1;  // b1 += a2, b2 += a1
  for (const auto& M : moves) {
    Eigen::MatrixXcd Pi = rv.periods.Pi * M.cast<C>();
    Eigen::RowVectorXd r = Eigen::Map<const Eigen::RowVectorXd>(rv.eta_periods.data(), 4) * M;
    auto pm = normalize_periods(Pi);
    CHECK(pm.min_imag_eigenvalue > 0);
    std::vector<double> rr(r.data(), r.data() + 4);
    CHECK(hodge_norm(pm, rr) == doctest::Approx(rv.hodge_norm).epsilon(1e-12));
  }
}

TEST_CASE("torus cycle gives the Mahler measure") {
  // For real a > 4 the circle |x1| = 1 lifts to a closed cycle on the sheet with |x2| > 1,
  // where eta = -log|x2| darg x1; the Mahler measure is the mean of log|x2| on that lift.
  const double a = 8;
  int n = 256;
  double m = 0;
  for (int k = 0; k < n; ++k) {
    C x1 = std::polar(1.0, 2 * kPi * k / n), b = x1 + 1.0 / x1 + a, d = std::sqrt(b * b - 4.0);
    m += std::log(std::max(std::abs((-b + d) / 2.0), std::abs((-b - d) / 2.0)));
  }
  m /= n;
  auto f = build_fiber(square(), {a});
  std::vector<C> polygon;
  for (int k = 0; k <= 64; ++k) polygon.push_back(std::polar(1.0, 2 * kPi * k / 64));
  auto roots = sheets_at(f, polygon[0]);
  int big = std::abs(roots[0]) > std::abs(roots[1]) ? 0 : 1;
  auto v = integrate_cycle(f, as_cycle(PolylineLoop{polygon, big}));
  CHECK(v.eta == doctest::Approx(-2 * kPi * m).epsilon(1e-10));
  CHECK(m == doctest::Approx(std::log(a)).epsilon(0.05));
}
