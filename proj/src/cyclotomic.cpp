#include "tempered/cyclotomic.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "tempered/error.hpp"

namespace tempered {

namespace {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic divisor; returns false if there is a remainder.
bool divide_monic(const IntPoly& num, const IntPoly& den, IntPoly& quot) {
  if (num.size() < den.size()) return false;
  IntPoly rem = num;
  quot.assign(num.size() - den.size() + 1, BigInt(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigInt c = rem[k + den.size() - 1];
    quot[k] = c;
    if (c != 0)
      for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
  }
  for (const auto& r : rem)
    if (r != 0) return false;
  return true;
}

int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

unsigned euler_phi(unsigned d) {
  unsigned result = d;
  for (unsigned p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

IntPoly cyclotomic_polynomial(unsigned d) {
  // Phi_d = prod_{e | d} (t^e - 1)^{mu(d/e)}
  IntPoly num{BigInt(1)}, den{BigInt(1)};
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = mobius(d / e);
    if (mu == 0) continue;
    IntPoly f(e + 1, BigInt(0));
    f[0] = -1;
    f[e] = 1;
    (mu > 0 ? num : den) = multiply(mu > 0 ? num : den, f);
  }
  IntPoly q;
  divide_monic(num, den, q);
  return q;
}

bool is_cyclotomic_product(const IntPoly& input) {
  IntPoly q = input;
  trim(q);
  std::size_t lead = 0;
  while (lead < q.size() && q[lead] == 0) ++lead;
  q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(lead));
  if (q.empty()) return false;

  BigInt content = 0;
  for (const auto& c : q) content = boost::multiprecision::gcd(content, c);
  for (auto& c : q) c /= content;
  if (q.back() < 0)
    for (auto& c : q) c = -c;
  if (q.back() != 1 || abs(q.front()) != 1) return false;

  unsigned n = static_cast<unsigned>(q.size() - 1);
  for (unsigned d = 1; n > 0 && d <= 2 * n * n + 2; ++d) {
    if (euler_phi(d) > n) continue;
    IntPoly phi = cyclotomic_polynomial(d);
    IntPoly quot;
    while (q.size() >= phi.size() && divide_monic(q, phi, quot)) q = quot;
    n = static_cast<unsigned>(q.size() - 1);
  }
  return q.size() == 1 && abs(q[0]) == 1;
}

bool is_cyclotomic_product(const std::vector<Rational>& q) {
  BigInt lcm = 1;
  for (const auto& c : q) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  IntPoly ip;
  for (const auto& c : q) ip.push_back(numerator(c) * (lcm / denominator(c)));
  return is_cyclotomic_product(ip);
}

bool is_cyclotomic_product(const std::vector<ExactComplex>& q) {
  std::vector<Rational> real;
  for (const auto& c : q) {
    if (!c.is_real()) throw Error(ErrorCode::NonIntegerCoefficients, "coefficient " + c.to_string() + " is not real");
    real.push_back(c.re);
  }
  return is_cyclotomic_product(real);
}

namespace {

EdgeVerdict judge(const EdgePolynomial& ep) {
  EdgeVerdict v{ep, false, {}};
  std::vector<ExactComplex> c;
  for (const auto& k : ep.coeffs) c.push_back(k.is_zero() ? ExactComplex{} : k.exact());
  // Normalize by the start coefficient (nonzero: it sits at a vertex).
  const ExactComplex& c0 = c.front();
  Rational norm2 = c0.re * c0.re + c0.im * c0.im;
  ExactComplex inv{c0.re / norm2, -c0.im / norm2};
  std::vector<Rational> real;
  for (const auto& x : c) {
    ExactComplex y = x * inv;
    if (!y.is_real()) {
      v.note = "edge polynomial is not a complex multiple of a rational polynomial";
      return v;
    }
    real.push_back(y.re);
  }
  v.cyclotomic = is_cyclotomic_product(real);
  v.note = v.cyclotomic ? "cyclotomic" : "edge not cyclotomic";
  return v;
}

}  // namespace

TemperednessReport is_tempered(const LaurentPolynomial& p, const NewtonPolygon& polygon) {
  TemperednessReport report;
  auto eps = edge_polynomials(p, polygon);
  for (const auto& ep : eps)
    for (const auto& k : ep.coeffs)
      if (!k.is_zero() && !k.is_exact())
        throw Error(ErrorCode::InexactEdgeCoefficients, "edge coefficient " + k.to_string() + " is not exact");
  report.tempered = true;
  for (const auto& ep : eps) {
    report.edges.push_back(judge(ep));
    report.tempered = report.tempered && report.edges.back().cyclotomic;
  }
  return report;
}

TemperednessReport is_tempered(const LaurentPolynomial& p) { return is_tempered(p, newton_polygon(p)); }

}  // namespace tempered
