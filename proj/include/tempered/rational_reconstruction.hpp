#pragma once

#include <optional>

namespace tempered {

struct Fraction {
  long p = 0;
  long q = 1;
  double residual = 0;  // |x - p/q|
};

/// Best continued-fraction convergent (or semiconvergent) of x with q <= max_denominator.
Fraction best_rational(double x, long max_denominator);

/// The best approximation if its residual is below tol.
std::optional<Fraction> reconstruct_rational(double x, long max_denominator, double tol);

}  // namespace tempered
