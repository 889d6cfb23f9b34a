#include "tempered/rational_reconstruction.hpp"

#include <cmath>

namespace tempered {

Fraction best_rational(double x, long max_denominator) {
  long sign = x < 0 ? -1 : 1;
  double y = std::abs(x);
  // convergents h/k
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = y;
  Fraction best{static_cast<long>(std::llround(y)), 1, std::abs(y - std::round(y))};
  for (int it = 0; it < 64; ++it) {
    double fa = std::floor(r);
    if (fa > 1e15) break;
    long a = static_cast<long>(fa);
    long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_denominator) {
      // largest admissible semiconvergent
      long t = (max_denominator - k0) / k1;
      if (t > 0) {
        long hs = t * h1 + h0, ks = t * k1 + k0;
        double res = std::abs(y - double(hs) / double(ks));
        if (res < best.residual) best = {hs, ks, res};
      }
      break;
    }
    double res = std::abs(y - double(h2) / double(k2));
    if (res < best.residual || (res == best.residual && k2 < best.q)) best = {h2, k2, res};
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    double frac = r - fa;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  best.p *= sign;
  return best;
}

std::optional<Fraction> reconstruct_rational(double x, long max_denominator, double tol) {
  Fraction f = best_rational(x, max_denominator);
  if (f.residual < tol) return f;
  return std::nullopt;
}

}  // namespace tempered
