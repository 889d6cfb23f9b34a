#include "tempered/periods.hpp"

#include <cmath>

#include "tempered/error.hpp"

namespace tempered {

PeriodMatrix normalize_periods(const Eigen::MatrixXcd& Pi, double max_condition) {
  const long g = Pi.rows();
  PeriodMatrix pm;
  pm.Pi = Pi;
  if (g == 0) return pm;
  Eigen::MatrixXcd A = Pi.leftCols(g), B = Pi.rightCols(g);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  pm.a_block_condition = sv(g - 1) > 0 ? sv(0) / sv(g - 1) : std::numeric_limits<double>::infinity();
  if (!(pm.a_block_condition <= max_condition))
    throw Error(ErrorCode::IllConditionedABlock, "condition number " + std::to_string(pm.a_block_condition));
  pm.tau = A.partialPivLu().solve(B);
  pm.symmetry_residual = (pm.tau - pm.tau.transpose()).norm() / pm.tau.norm();
  Eigen::MatrixXd im = pm.tau.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
  pm.min_imag_eigenvalue = es.eigenvalues().minCoeff();
  return pm;
}

PeriodMatrix period_matrix(const CurveFiber& fiber, double max_condition) {
  const int g = fiber.genus;
  Eigen::MatrixXcd Pi(g, 2 * g);
  for (int k = 0; k < 2 * g; ++k) {
    auto v = integrate_cycle(fiber, fiber.basis[k]);
    for (int j = 0; j < g; ++j) Pi(j, k) = v.omega[j];
  }
  return normalize_periods(Pi, max_condition);
}

std::complex<double> reduce_modular(std::complex<double> tau) {
  for (int it = 0; it < 1000; ++it) {
    tau -= std::round(tau.real());
    if (std::norm(tau) < 1 - 1e-15)
      tau = -1.0 / tau;
    else
      break;
  }
  return tau;
}

}  // namespace tempered
