#pragma once

#include <Eigen/Dense>

#include "tempered/fiber.hpp"

namespace tempered {

/// Pi(j, k) = integral of the j-th differential over basis cycle k (a_1..a_g, b_1..b_g)
/// and tau = A^{-1} B for the blocks A = Pi(:, 0:g), B = Pi(:, g:2g).
struct PeriodMatrix {
  Eigen::MatrixXcd Pi;
  Eigen::MatrixXcd tau;
  double symmetry_residual = 0;  // |tau - tau^T| / |tau|
  double min_imag_eigenvalue = 0;
  double a_block_condition = 0;
};

/// Throws IllConditionedABlock when cond(A) exceeds max_condition.
PeriodMatrix period_matrix(const CurveFiber& fiber, double max_condition = 1e12);

/// tau from the period blocks, with the Riemann-relation diagnostics filled in.
PeriodMatrix normalize_periods(const Eigen::MatrixXcd& Pi, double max_condition = 1e12);

/// Moves a genus-1 period ratio into the standard fundamental domain of SL2(Z).
std::complex<double> reduce_modular(std::complex<double> tau);

}  // namespace tempered
