#include <cmath>
#include <random>

#include "doctest.h"
#include "tempered/appendix_pde.hpp"
#include "tempered/error.hpp"

using namespace tempered;
using C = std::complex<double>;

namespace {

const C I{0, 1};

Eigen::VectorXcd vec(std::initializer_list<C> v) {
  Eigen::VectorXcd z(v.size());
  int k = 0;
  for (C c : v) z[k++] = c;
  return z;
}

MultiPoly z1_plus_z2sq() {
  MultiPoly p(2);
  p.add_term({1, 0}, 1.0);
  p.add_term({0, 2}, 1.0);
  return p;
}

MultiPoly z1_plus_i() {
  MultiPoly p(2);
  p.add_term({1, 0}, 1.0);
  p.add_term({0, 0}, I);
  return p;
}

C remark_eps11(const Eigen::VectorXcd& z) {
  C a = z[0], b = z[1];
  return (a * a / 2.0 + a * b * b / 3.0) / (a + b * b);
}

const PathLimit& limit_along(const IndeterminacyVerdict& v, const std::string& path, int i = 0, int j = 0) {
  for (const auto& L : v.limits)
    if (L.path == path && L.i == i && L.j == j) return L;
  throw std::runtime_error("no path " + path);
}

}  // namespace

TEST_CASE("multivariate polynomial arithmetic") {
  MultiPoly p = z1_plus_z2sq(), q = z1_plus_i();
  auto z = vec({C(0.3, -0.1), C(0.2, 0.5)});
  CHECK(std::abs((p * q)(z) - p(z) * q(z)) < 1e-15);
  CHECK(std::abs((p - q)(z) - (p(z) - q(z))) < 1e-15);
  CHECK(std::abs(p.derivative(1)(z) - 2.0 * z[1]) < 1e-15);
  CHECK(p.total_degree() == 2);
  auto ray = p.along_ray(z);
  CHECK(std::abs(ray[1] - z[0]) < 1e-15);
  CHECK(std::abs(ray[2] - z[1] * z[1]) < 1e-15);
}

TEST_CASE("segment integral") {
  // tau constant: d tau = 0.
  MultiPoly F = MultiPoly::variable(1, 0);
  CHECK(epsilon_entry(F, MultiPoly::constant(1, C(2, 3)), vec({0.4})) == C(0));

  // F = z, tau = z: (1/z) * integral of (tz) z dt = z/2.
  for (C z : {C(0.3, 0.1), C(-0.7, 0.2), C(0.01, -0.02)})
    CHECK(std::abs(epsilon_entry(F, MultiPoly::variable(1, 0), vec({z})) - z / 2.0) < 1e-14);

  // The star-shapedness counterexample, off the divisor z1 = -z2^2.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int s = 0; s < 50; ++s) {
    auto z = vec({C(u(rng), u(rng)), C(u(rng), u(rng))});
    if (std::abs(z[0] + z[1] * z[1]) < 1e-3) continue;
    C e = epsilon_entry(z1_plus_z2sq(), z1_plus_i(), z), want = remark_eps11(z);
    CHECK(std::abs(e - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }

  try {
    epsilon_entry(z1_plus_z2sq(), z1_plus_i(), vec({-1.0, 1.0}));
    FAIL("expected OnZeroDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OnZeroDivisor);
  }

  // Identically zero components give zero; unspecified entries come back as NaN.
  PolyMap Fs{MultiPoly::variable(1, 0), MultiPoly(1)};
  MatrixField tau(2, std::vector<std::optional<MultiPoly>>(2));
  tau[0][1] = MultiPoly::variable(1, 0);
  tau[1][0] = MultiPoly::variable(1, 0);
  auto eps = epsilon_matrix(Fs, tau, vec({0.3}));
  CHECK(eps(0, 1) == C(0));
  CHECK(std::abs(eps(1, 0) - 0.15) < 1e-14);
  CHECK(std::isnan(eps(0, 0).real()));
}

TEST_CASE("power-series form of eps") {
  // d tau/dz = 1, alpha = 0: the coefficient of z is 1/(0 + 0 + 1).
  auto N = epsilon_series({0}, MultiPoly::variable(1, 0), MultiPoly::constant(1, 1.0));
  CHECK(N.coefficient({1}) == C(1));
  CHECK(N.coefficient({0}) == C(0));

  // alpha = 2, d tau/dz = z: coefficient of z^2 is 1/(2 + 1 + 1), and the quadrature of
  // (1/z^2) * integral of (tz)^2 (tz) z dt agrees.
  MultiPoly tau = MultiPoly::monomial({2}, 0.5);
  N = epsilon_series({2}, tau, MultiPoly::constant(1, 1.0));
  CHECK(N.coefficient({2}) == C(0.25));
  C z(0.35, -0.2);
  CHECK(std::abs(epsilon_entry(MultiPoly::monomial({2}), tau, vec({z})) - 0.25 * z * z) < 1e-14);

  CHECK(epsilon_series({1}, MultiPoly::constant(1, 3.0), MultiPoly::constant(1, 1.0)).is_zero());
}

TEST_CASE("splitting G = S F") {
  // Constant tau, G = tau F: S = tau.
  MonomialUnit f{false, {1, 1}, MultiPoly::constant(2, C(1, 1))};
  auto Fp = f.expand();
  std::vector<std::vector<MultiPoly>> tau{{MultiPoly::constant(2, C(0.5, 2))}};
  PolyMap G{C(0.5, 2) * Fp};
  auto rep = verify_splitting({f}, G, tau, {vec({0.2, C(0.1, 0.3)}), vec({-0.4, 0.25})});
  CHECK(rep.splitting_residual < 1e-14);
  CHECK(rep.origin_residual == 0);

  // F = z, tau = z + i, G = z^2/2 + i z: S = z + i - z/2.
  MonomialUnit g1{false, {1}, MultiPoly::constant(1, 1.0)};
  MultiPoly t1 = MultiPoly::variable(1, 0) + MultiPoly::constant(1, I);
  MultiPoly G1 = MultiPoly::monomial({2}, 0.5) + MultiPoly::monomial({1}, I);
  std::vector<Eigen::VectorXcd> zs{vec({C(0.3, 0.2)}), vec({C(-0.5, 0.1)}), vec({C(0.05, -0.4)})};
  rep = verify_splitting({g1}, {G1}, {{t1}}, zs);
  CHECK(rep.splitting_residual < 1e-12);
  CHECK(rep.series_agreement < 1e-12);
  for (const auto& z : zs) {
    C S = z[0] + I - z[0] / 2.0;
    CHECK(std::abs(S * z[0] - G1(z)) < 1e-15);
  }

  // G = tau F with nonconstant tau violates dG = tau dF.
  try {
    verify_splitting({g1}, {t1 * MultiPoly::variable(1, 0)}, {{t1}}, zs);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
  }
}

TEST_CASE("random monomial-unit instances") {
  int dims[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = random_splitting_instance(seed);
    INFO("seed " << seed);
    dims[inst.F.size()]++;
    SplittingReport rep = verify_splitting(inst.F, inst.G, inst.tau, inst.samples);
    CHECK(rep.samples == 6);
    CHECK(rep.splitting_residual < 1e-8);
    CHECK(rep.series_agreement < 1e-9);
    CHECK(rep.origin_residual < 1e-15);
  }
  CHECK(dims[1] > 0);
  CHECK(dims[3] > 0);
}

TEST_CASE("d(S F) = dG") {
  auto inst = random_splitting_instance(99, 6, 3);
  const PolyMap F = expand(inst.F);
  const std::size_t g = F.size();
  MatrixField field(g, std::vector<std::optional<MultiPoly>>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) field[i][j] = inst.tau[i][j];
  auto SF = [&](const Eigen::VectorXcd& z) {
    Eigen::MatrixXcd eps = epsilon_matrix(F, field, z);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) out[i] += (inst.tau[i][j](z) - eps(i, j)) * F[j](z);
    return out;
  };
  const double h = 1e-5;
  for (const auto& z : inst.samples)
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      Eigen::VectorXcd zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      Eigen::VectorXcd d = (SF(zp) - SF(zm)) / (2 * h);
      for (std::size_t i = 0; i < g; ++i) {
        C dG = inst.G[i].derivative(int(k))(z);
        CHECK(std::abs(d[i] - dG) < 1e-6 * std::max(1.0, std::abs(dG)));
      }
    }
}

TEST_CASE("indeterminacy at the origin") {
  auto fx = load_indeterminacy_fixture(TEMPERED_FIXTURES "/indeterminacy.json");
  auto v = detect_indeterminacy(fx.F, fx.tau, fx.paths);
  CHECK(v.indeterminate);
  // Oracle from the closed form: along z1 = -z2^2 + z2^m with z2 = t, F_1 = t^m and the
  // numerator is t^4/6 + O(t^5), so the limit is 0 for m = 3, 1/6 for m = 4 and none for m = 5.
  CHECK(std::abs(limit_along(v, "z1 axis").limit) < 1e-6);
  CHECK(std::abs(limit_along(v, "z2 axis").limit) < 1e-6);
  CHECK(std::abs(limit_along(v, "z1 = -z2^2 + z2^3").limit) < 1e-6);
  CHECK(limit_along(v, "z1 = -z2^2 + z2^3").converged);
  CHECK(std::abs(limit_along(v, "z1 = -z2^2 + z2^4").limit - 1.0 / 6) < 1e-6);
  CHECK_FALSE(limit_along(v, "z1 = -z2^2 + z2^5").converged);
  // eps_22 = z1/3 is determinate; the z1 axis lies in the divisor of F_2.
  CHECK(limit_along(v, "z1 axis", 1, 1).on_divisor);
  CHECK(std::abs(limit_along(v, "z1 = -z2^2 + z2^4", 1, 1).limit) < 1e-6);

  for (const auto& path : fx.paths) {
    const auto& L = limit_along(v, path.name);
    for (const auto& [t, e] : L.trace) {
      C want = remark_eps11(path(t));
      CHECK(std::abs(e - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }

  // Monomial F and a line divisor through 0 are star-shaped.
  std::vector<ApproachPath> lines{ApproachPath::line(vec({1.0, 0.0}), "e1"), ApproachPath::line(vec({0.0, 1.0}), "e2"),
                                  ApproachPath::line(vec({1.0, C(0.3, 1)}), "skew"),
                                  fx.paths[4]};
  MatrixField t11(1, std::vector<std::optional<MultiPoly>>(1, z1_plus_i()));
  auto mono = detect_indeterminacy({MultiPoly::monomial({1, 2})}, t11, lines);
  CHECK_FALSE(mono.indeterminate);
  MultiPoly line(2);
  line.add_term({1, 0}, 1.0);
  line.add_term({0, 1}, 1.0);
  auto star = detect_indeterminacy({line}, t11, lines);
  CHECK_FALSE(star.indeterminate);
  for (const auto& L : star.limits)
    if (!L.on_divisor) CHECK(std::abs(L.limit) < 1e-6);

  CHECK_THROWS_AS(load_indeterminacy_fixture(TEMPERED_FIXTURES "/missing.json"), Error);
}
