#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "tempered/error.hpp"

namespace tempered {

template <class T>
using Cx = std::complex<T>;

/// Dense univariate polynomial, ascending powers.
template <class T>
using UniPoly = std::vector<Cx<T>>;

template <class T>
Cx<T> horner(const UniPoly<T>& p, Cx<T> x) {
  Cx<T> v{0};
  for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return v;
}

template <class T>
void horner2(const UniPoly<T>& p, Cx<T> x, Cx<T>& v, Cx<T>& dv) {
  v = Cx<T>{0};
  dv = Cx<T>{0};
  for (std::size_t k = p.size(); k-- > 0;) {
    dv = dv * x + v;
    v = v * x + p[k];
  }
}

/// Drops leading and trailing coefficients below rel * max|c|. Returns the number of
/// trailing (low-order) coefficients removed, i.e. the multiplicity of the root at 0.
template <class T>
int trim_poly(UniPoly<T>& p, T rel) {
  T big = 0;
  for (const auto& c : p) big = std::max(big, std::abs(c));
  if (big == 0) {
    p.clear();
    return 0;
  }
  while (!p.empty() && std::abs(p.back()) <= rel * big) p.pop_back();
  int low = 0;
  while (low < static_cast<int>(p.size()) && std::abs(p[low]) <= rel * big) ++low;
  p.erase(p.begin(), p.begin() + low);
  return low;
}

/// All roots via companion-matrix eigenvalues, each polished by a few Newton steps.
/// The input must have a nonzero leading coefficient.
template <class T>
std::vector<Cx<T>> poly_roots(const UniPoly<T>& p) {
  int n = static_cast<int>(p.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  using Mat = Eigen::Matrix<Cx<T>, Eigen::Dynamic, Eigen::Dynamic>;
  Mat c = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = Cx<T>{1};
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Mat> es(c, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::RootFindingFailure, "companion eigenvalues did not converge");
  std::vector<Cx<T>> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      Cx<T> v, dv;
      horner2(p, r, v, dv);
      if (dv == Cx<T>{0}) break;
      Cx<T> step = v / dv;
      if (!(std::abs(step) < T(1e-3) * (T(1) + std::abs(r)))) break;
      r -= step;
    }
  }
  return roots;
}

/// Dense polynomial sum_{k,i} c[k][i] x1^i x2^k.
template <class T>
struct BivariatePoly {
  std::vector<UniPoly<T>> c;  // c[k] = coefficient polynomial of x2^k, in x1

  int deg2() const { return static_cast<int>(c.size()) - 1; }
  int deg1() const {
    int d = 0;
    for (const auto& ck : c) d = std::max(d, static_cast<int>(ck.size()) - 1);
    return d;
  }

  /// Coefficients of F(x1, .) as a polynomial in x2.
  UniPoly<T> in_x2(Cx<T> x1) const {
    UniPoly<T> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = horner(c[k], x1);
    return out;
  }

  Cx<T> operator()(Cx<T> x1, Cx<T> x2) const { return horner(in_x2(x1), x2); }

  /// F, F_x1, F_x2 at one point.
  void eval(Cx<T> x1, Cx<T> x2, Cx<T>& f, Cx<T>& f1, Cx<T>& f2) const {
    f = f1 = f2 = Cx<T>{0};
    for (std::size_t k = c.size(); k-- > 0;) {
      Cx<T> v, dv;
      horner2(c[k], x1, v, dv);
      f2 = f2 * x2 + f;
      f = f * x2 + v;
      f1 = f1 * x2 + dv;
    }
  }

  BivariatePoly d_x1() const {
    BivariatePoly out;
    out.c.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t i = 1; i < c[k].size(); ++i) {
        out.c[k].resize(c[k].size() - 1);
        out.c[k][i - 1] = c[k][i] * T(i);
      }
    return out;
  }

  BivariatePoly d_x2() const {
    BivariatePoly out;
    for (std::size_t k = 1; k < c.size(); ++k) {
      UniPoly<T> ck = c[k];
      for (auto& v : ck) v *= T(k);
      out.c.push_back(ck);
    }
    if (out.c.empty()) out.c.push_back({});
    return out;
  }

  /// Sum of |c| |x^e|, the natural scale for residuals at (x1, x2).
  T magnitude(Cx<T> x1, Cx<T> x2) const {
    T s = 0, a1 = std::abs(x1), a2 = std::abs(x2), p2 = 1;
    for (std::size_t k = 0; k < c.size(); ++k, p2 *= a2) {
      T p1 = 1;
      for (std::size_t i = 0; i < c[k].size(); ++i, p1 *= a1) s += std::abs(c[k][i]) * p1 * p2;
    }
    return s;
  }
};

/// Res_{x2}(f, f') of a univariate polynomial via the Sylvester determinant.
template <class T>
Cx<T> discriminant_resultant(const UniPoly<T>& f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return Cx<T>{0};
  UniPoly<T> df(n);
  for (int k = 1; k <= n; ++k) df[k - 1] = f[k] * T(k);
  int m = n - 1, N = n + m;
  if (N == 0) return Cx<T>{1};
  using Mat = Eigen::Matrix<Cx<T>, Eigen::Dynamic, Eigen::Dynamic>;
  Mat s = Mat::Zero(N, N);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = f[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(m + r, r + k) = df[m - k];
  return s.partialPivLu().determinant();
}

/// Coefficients of D(x1) = Res_{x2}(F, F_x2) by evaluation on the unit circle and an
/// inverse discrete Fourier transform.
template <class T>
UniPoly<T> discriminant_in_x1(const BivariatePoly<T>& F) {
  int n = F.deg2();
  int N = (2 * n - 1) * F.deg1() + 1;
  std::vector<Cx<T>> values(N);
  const T two_pi = 2 * std::numbers::pi_v<T>;
  for (int k = 0; k < N; ++k) values[k] = discriminant_resultant(F.in_x2(std::polar(T(1), two_pi * k / N)));
  UniPoly<T> coeffs(N);
  for (int j = 0; j < N; ++j) {
    Cx<T> s{0};
    for (int k = 0; k < N; ++k) s += values[k] * std::polar(T(1), -two_pi * T((j * k) % N) / N);
    coeffs[j] = s / T(N);
  }
  return coeffs;
}

/// Points where F = F_x2 = 0, i.e. where sheets of the x1-projection meet, polished by
/// Newton on the 2x2 system. Returned as (x1, x2) pairs; x1 = 0 roots are omitted.
template <class T>
std::vector<std::pair<Cx<T>, Cx<T>>> critical_points_of_projection(const BivariatePoly<T>& F) {
  UniPoly<T> D = discriminant_in_x1(F);
  trim_poly(D, T(1e-13));
  std::vector<std::pair<Cx<T>, Cx<T>>> out;
  if (D.size() < 2) return out;
  BivariatePoly<T> F2 = F.d_x2(), F12 = F2.d_x1(), F22 = F2.d_x2();
  for (Cx<T> x1 : poly_roots(D)) {
    if (std::abs(x1) < T(1e-12)) continue;
    auto fib = F.in_x2(x1);
    UniPoly<T> lead = fib;
    trim_poly(lead, T(0));
    if (lead.size() < 2) continue;
    auto roots = poly_roots(lead);
    // pick the root closest to being double
    Cx<T> x2 = roots.front();
    T best = std::numeric_limits<T>::infinity();
    for (auto r : roots) {
      Cx<T> f, f1, f2;
      F.eval(x1, r, f, f1, f2);
      T score = std::abs(f2) / (T(1) + std::abs(r));
      if (score < best) best = score, x2 = r;
    }
    for (int it = 0; it < 8; ++it) {
      Cx<T> f, f1, f2;
      F.eval(x1, x2, f, f1, f2);
      Cx<T> g = F2(x1, x2), g1 = F12(x1, x2), g2 = F22(x1, x2);
      Cx<T> det = f1 * g2 - f2 * g1;
      if (std::abs(det) == T(0)) break;
      Cx<T> d1 = (f * g2 - f2 * g) / det, d2 = (f1 * g - f * g1) / det;
      if (!(std::abs(d1) < T(0.1) * (T(1) + std::abs(x1)))) break;
      x1 -= d1;
      x2 -= d2;
      if (std::abs(d1) + std::abs(d2) < T(1e-15) * (std::abs(x1) + std::abs(x2))) break;
    }
    out.emplace_back(x1, x2);
  }
  return out;
}

}  // namespace tempered
