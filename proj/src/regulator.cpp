#include "tempered/regulator.hpp"

#include <cmath>
#include <numbers>

#include "tempered/error.hpp"

namespace tempered {

namespace {

constexpr double kFourPiSq = 4 * std::numbers::pi * std::numbers::pi;

bool retryable(ErrorCode c) {
  return c == ErrorCode::ArgTrackingJump || c == ErrorCode::SheetCollision ||
         c == ErrorCode::QuadratureNonconvergence || c == ErrorCode::RootFindingFailure;
}

}  // namespace

std::complex<double> reduce_mod_lattice(std::complex<double> v) {
  double re = v.real() - kFourPiSq * std::round(v.real() / kFourPiSq);
  return {re, v.imag()};
}

double eta_period(const CurveFiber& fiber, const Cycle& cycle) { return integrate_cycle(fiber, cycle).eta; }

std::complex<double> full_regulator_period(const CurveFiber& fiber, const Cycle& cycle) {
  return reduce_mod_lattice(integrate_cycle(fiber, cycle).full);
}

double hodge_norm(const PeriodMatrix& pm, const std::vector<double>& r) {
  const long g = pm.tau.rows();
  if (g == 0) return 0;
  Eigen::VectorXd ra(g), rb(g);
  for (long j = 0; j < g; ++j) ra(j) = r[j], rb(j) = r[g + j];
  Eigen::MatrixXd X = pm.tau.real(), Y = 0.5 * (pm.tau.imag() + pm.tau.imag().transpose());
  Eigen::VectorXd d = rb - X * ra;
  double q = d.dot(Y.ldlt().solve(d)) + ra.dot(Y * ra);
  return std::sqrt(std::max(q, 0.0));
}

RegulatorVector regulator_vector(const CurveFiber& fiber, const ParamVector& a) {
  RegulatorVector rv;
  rv.a = a;
  double sq = 0;
  const int g = fiber.genus;
  Eigen::MatrixXcd Pi(g, 2 * g);
  for (int k = 0; k < 2 * g; ++k) {
    auto v = integrate_cycle(fiber, fiber.basis[k]);
    for (int j = 0; j < g; ++j) Pi(j, k) = v.omega[j];
    rv.eta_periods.push_back(v.eta);
    rv.full_periods.push_back(reduce_mod_lattice(v.full));
    rv.consistency = std::max(rv.consistency, std::abs(v.full.imag() - v.eta));
    sq += v.eta * v.eta;
  }
  rv.norm = std::sqrt(sq);
  rv.periods = normalize_periods(Pi);
  rv.hodge_norm = hodge_norm(rv.periods, rv.eta_periods);
  return rv;
}

RegulatorVector regulator_vector(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options,
                                 const FiberPlan* reuse, CurveFiber* fiber_out) {
  CurveFiber f;
  try {
    f = build_fiber(fam, a, options, reuse);
  } catch (const Error& e) {
    if (options.precision == Precision::Extended || !retryable(e.code())) throw;
    FiberOptions ext = options;
    ext.precision = Precision::Extended;
    f = build_fiber(fam, a, ext, reuse);
  }
  auto rv = regulator_vector(f, a);
  if (fiber_out) *fiber_out = std::move(f);
  return rv;
}

RegulatorJacobian regulator_jacobian(const PeriodMatrix& pm) {
  const long g = pm.Pi.rows();
  RegulatorJacobian rj;
  rj.J.resize(2 * g, 2 * g);
  for (long k = 0; k < 2 * g; ++k)
    for (long j = 0; j < g; ++j) {
      rj.J(k, 2 * j) = pm.Pi(j, k).imag();
      rj.J(k, 2 * j + 1) = pm.Pi(j, k).real();
    }
  if (g > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rj.J);
    rj.sigma_min = svd.singularValues()(2 * g - 1);
    rj.condition = svd.singularValues()(0) / rj.sigma_min;
  }
  return rj;
}

RegulatorJacobian regulator_jacobian(const CurveFiber& fiber) { return regulator_jacobian(period_matrix(fiber)); }

RegulatorJacobian regulator_jacobian(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options) {
  CurveFiber f;
  regulator_vector(fam, a, options, nullptr, &f);
  return regulator_jacobian(f);
}

TorsionVerdict torsion_from_periods(const std::vector<std::complex<double>>& full_periods, long max_denominator,
                                    double tol) {
  TorsionVerdict v;
  v.candidate = true;
  for (const auto& z : full_periods) {
    double x = z.real() / kFourPiSq;
    x -= std::floor(x);
    v.values.push_back(x);
    auto f = reconstruct_rational(x, max_denominator, tol);
    if (!f) {
      v.candidate = false;
      v.rationals.push_back(best_rational(x, max_denominator));
    } else {
      v.rationals.push_back(*f);
    }
  }
  v.note = v.candidate ? "torsion-candidate (sign of the rationals not normalized)" : "non-torsion-at-this-precision";
  return v;
}

TorsionVerdict torsion_candidate_test(const TemperedFamily& fam, const ParamVector& a, long max_denominator,
                                      double tol, const FiberOptions& options) {
  auto rv = regulator_vector(fam, a, options);
  if (!(rv.norm < tol))
    throw Error(ErrorCode::PrerequisiteNotExact, "|R*(a)| = " + std::to_string(rv.norm) + " is not below tolerance");
  return torsion_from_periods(rv.full_periods, max_denominator, tol);
}

}  // namespace tempered
