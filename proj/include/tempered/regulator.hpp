#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tempered/fiber.hpp"
#include "tempered/periods.hpp"
#include "tempered/rational_reconstruction.hpp"

namespace tempered {

/// (2 pi i)^2: the ambiguity of full regulator periods.
inline constexpr double kRegulatorLattice = -4.0 * 3.14159265358979323846 * 3.14159265358979323846;

/// Regulator of the symbol {x1, x2} on the basis cycles a_1..a_g, b_1..b_g.
struct RegulatorVector {
  ParamVector a;
  std::vector<double> eta_periods;                 // integrals of log|x1| darg x2 - log|x2| darg x1
  std::vector<std::complex<double>> full_periods;  // integrals of log x1 dlog x2, modulo (2 pi i)^2
  double norm = 0;
  double consistency = 0;  // max |Im full - eta|
  /// Hodge norm of the class; unlike `norm` it does not depend on the symplectic basis.
  double hodge_norm = 0;
  PeriodMatrix periods;
};

/// Hodge norm of the real class with periods r = (r_a, r_b):
/// |r_b - X r_a|^2_{Y^{-1}} + |r_a|^2_Y for tau = X + iY.
double hodge_norm(const PeriodMatrix& pm, const std::vector<double>& r);

double eta_period(const CurveFiber& fiber, const Cycle& cycle);

/// Value of the full period with its real part reduced into (-2 pi^2, 2 pi^2].
std::complex<double> full_regulator_period(const CurveFiber& fiber, const Cycle& cycle);
std::complex<double> reduce_mod_lattice(std::complex<double> v);

RegulatorVector regulator_vector(const CurveFiber& fiber, const ParamVector& a = {});

/// Builds the fiber (reusing `reuse` if given) and assembles the vector. Tracking or
/// quadrature failures in double precision are retried once in extended precision.
/// The fiber actually used is returned through `fiber_out`.
RegulatorVector regulator_vector(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options = {},
                                 const FiberPlan* reuse = nullptr, CurveFiber* fiber_out = nullptr);

/// d(eta periods)/d(Re a_j, Im a_j): rows are cycles, column 2j is Re a_j and column
/// 2j+1 is Im a_j.
struct RegulatorJacobian {
  Eigen::MatrixXd J;
  double sigma_min = 0;
  double condition = 0;
};

RegulatorJacobian regulator_jacobian(const PeriodMatrix& pm);
RegulatorJacobian regulator_jacobian(const CurveFiber& fiber);
RegulatorJacobian regulator_jacobian(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options = {});

struct TorsionVerdict {
  bool candidate = false;
  std::vector<Fraction> rationals;  // Re(v_k) / (2 pi)^2 modulo 1, per cycle
  std::vector<double> values;
  std::string note;
};

/// Rational reconstruction of the real parts of already-reduced full periods.
TorsionVerdict torsion_from_periods(const std::vector<std::complex<double>>& full_periods, long max_denominator,
                                    double tol);

/// Throws PrerequisiteNotExact unless |eta periods| < tol at a.
TorsionVerdict torsion_candidate_test(const TemperedFamily& fam, const ParamVector& a, long max_denominator,
                                      double tol, const FiberOptions& options = {});

}  // namespace tempered
