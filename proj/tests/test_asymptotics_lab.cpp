#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tempered/asymptotics.hpp"
#include "tempered/error.hpp"

using namespace tempered;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const C I{0, 1};

DiskModel model(int n, std::vector<C> f, std::vector<C> eta, C Psi, C Psi_alpha = 0, double radius = 0.5) {
  DiskModel m;
  m.n = n;
  m.f.c = std::move(f);
  m.eta.c = std::move(eta);
  m.Psi = Psi;
  m.Psi_alpha = Psi_alpha;
  m.radius = radius;
  return m;
}

template <class Fn>
void expect_code(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("series evaluation and tail bounds") {
  Series s{{1.0, 2.0, C(0, 3)}, 0.5, 2.0};
  C z(0.1, -0.2);
  CHECK(std::abs(s(z) - (1.0 + 2.0 * z + 3.0 * I * z * z)) < 1e-15);
  CHECK(std::abs(s.derivative(z) - (2.0 + 6.0 * I * z)) < 1e-15);
  CHECK(s.order() == 0);
  // sum_{k >= 3} 0.5 * (2 r)^k at r = 0.25
  CHECK(s.tail(0.25) == doctest::Approx(0.5 * std::pow(0.5, 3) / 0.5));
  expect_code(ErrorCode::SeriesTailTooLarge, [&] { s.tail(0.5); });
}

TEST_CASE("R~ in the trivial and constant-eta models") {
  RTilde r0(model(0, {1.0}, {0.0}, 0.0));
  for (C z : {C(0.1, 0.2), C(-0.3, 0.05)}) {
    CHECK(std::abs(r0.F(z) - z) < 1e-15);
    CHECK(std::abs(r0.G(z)) < 1e-15);
  }

  // f = 1 + 2z, eta = c + z: G = c z + (2c + 1) z^2 / 2 + 2 z^3 / 3 by direct integration.
  const C c(0.4, 1.3);
  RTilde r1(model(0, {1.0, 2.0}, {c, 1.0}, 0.0));
  for (C z : {C(0.1, 0.2), C(-0.3, 0.05), C(0.02, -0.4)}) {
    C G = c * z + (2.0 * c + 1.0) * z * z / 2.0 + 2.0 * z * z * z / 3.0;
    CHECK(std::abs(r1.G(z) - G) < 1e-12);
    CHECK(std::abs(r1.F(z) - (z + z * z)) < 1e-15);
  }
}

TEST_CASE("R~ reconstruction residual for n = 2") {
  // f = 1, eta = 0: U = U~ = 1, H_0 = 0, so H = -2 / (2 pi i) = i / pi.
  RTilde r(model(2, {1.0}, {0.0}, I));
  for (C z : {C(0.1, 0.2), C(-0.3, 0.05), C(0.02, -0.4), C(-0.2, -0.01)}) {
    C expect = I + z * (I / kPi + 2.0 * std::log(z) / (2.0 * kPi * I));
    CHECK(std::abs(r.G(z) - expect) < 1e-14);
    CHECK(std::abs(r.H(z) - I / kPi) < 1e-15);
  }
}

TEST_CASE("d/dz of R~ recovers f omega") {
  CHECK(dz_consistency(model(3, {0.0, 0.0, 1.0, C(0.2, 0.1)}, {C(0.5, 1.0), -0.3}, C(0, 0.7))) < 1e-8);
  for (std::uint64_t s = 1; s <= 40; ++s) CHECK(dz_consistency(random_disk_model(s)) < 1e-8);
}

TEST_CASE("bounds on H dominate sampled values") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    DiskModel m = random_disk_model(100 + s);
    RTilde R(m);
    for (double r = m.radius; r > 1e-4; r /= 2) {
      double B;
      try {
        B = R.sup_H(r);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeriesTailTooLarge);
        continue;
      }
      double seen = 0;
      for (int j = 0; j < 200; ++j) seen = std::max(seen, std::abs(R.H(std::polar(r, 2 * kPi * j / 200))));
      CHECK(seen <= B * (1 + 1e-12));
      break;
    }
  }
}

TEST_CASE("nonvanishing when psi != 0") {
  Witness w = verify_nonvanishing_psi_nonzero(model(1, {1.0}, {0.0}, I));
  CHECK(w.radius > 0);
  CHECK(w.floor > 0);
  CHECK(w.samples > 0);

  expect_code(ErrorCode::PreconditionViolated, [] { verify_nonvanishing_psi_nonzero(model(1, {1.0}, {0.0}, 1.0)); });
  expect_code(ErrorCode::PreconditionViolated, [] { verify_nonvanishing_psi_nonzero(model(0, {1.0}, {I}, I)); });

  DiskModel big = model(2, {0.3, 1.0, -0.5}, {C(0.2, 0.4), 0.7}, C(0, 10));
  Witness wb = verify_nonvanishing_psi_nonzero(big);
  CHECK(wb.floor > 5);
  RTilde R(big);
  C z = std::polar(1e-8, 0.3);
  CHECK(std::hypot(R.F(z).imag(), R.G(z).imag()) == doctest::Approx(10).epsilon(1e-6));
}

TEST_CASE("nonvanishing when psi = 0 below exp(-4 pi B / n)") {
  // f = 1, eta = 0, n = 1: H = i / 2 pi, so B = 1 / 2 pi and the radius is e^{-2}.
  Witness w = verify_nonvanishing_psi_zero(model(1, {1.0}, {0.0}, 0.0));
  CHECK(w.radius == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(w.floor > 0);
  // On the circle |z| = e^{-2} the chain only gives (2 pi B / n) / (-log|z|) = 1/2, not < 1/2.
  CHECK(2 * kPi * (1 / (2 * kPi)) / 2.0 == doctest::Approx(0.5));

  // f = z^8, eta = 1: B = 1 + n / (2 pi 9) and the radius exp(-4 pi / n - 2 / 9) grows with n.
  auto radius = [](int n) {
    std::vector<C> f(9, 0.0);
    f[8] = 1.0;
    return verify_nonvanishing_psi_zero(model(n, f, {1.0}, 0.5, 0, 0.99)).radius;
  };
  double r1 = radius(1), r100 = radius(100);
  CHECK(r1 == doctest::Approx(std::exp(-4 * kPi - 2.0 / 9)).epsilon(1e-9));
  CHECK(r100 == doctest::Approx(std::exp(-4 * kPi / 100 - 2.0 / 9)).epsilon(1e-9));
  CHECK(r100 > 0.7);
  CHECK(r1 < r100);

  expect_code(ErrorCode::PreconditionViolated, [] { verify_nonvanishing_psi_zero(model(1, {1.0}, {0.0}, I)); });
}

TEST_CASE("n = 0: no common zeros of Im F and Im G") {
  // f = 1, tau = i + z: F = z, G = i z + z^2 / 2. On Im F = 0 (real z), |Im G| / |F| = 1.
  Witness w = verify_n_zero_case(model(0, {1.0}, {I, 1.0}, 0.0));
  CHECK(w.floor == doctest::Approx(1.0).epsilon(1e-9));

  Witness wa = verify_n_zero_case(model(0, {1.0}, {I, 1.0}, 0.0, I));
  CHECK(wa.floor > 0.5);

  expect_code(ErrorCode::PreconditionViolated, [] { verify_n_zero_case(model(0, {0.0, 0.0}, {I}, 0.0)); });
  expect_code(ErrorCode::PreconditionViolated, [] { verify_n_zero_case(model(0, {1.0}, {1.0}, 0.0)); });
  expect_code(ErrorCode::PreconditionViolated, [] { RTilde(model(2, {1.0}, {0.0}, I, 1.0)); });
}

TEST_CASE("log lemma") {
  CHECK(log_lemma_test({0.0, 1.0}, {}, 0.3).radius == 0.3);
  CHECK(log_lemma_test({}, {1.0}, 0.9).radius == 0.5);
  CHECK(log_lemma_test({}, {1.0}, 0.1).radius == 0.1);

  // t (1 - t^2 log|t|) has the sign of t near 0.
  Witness w = log_lemma_test({0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}, 0.5);
  CHECK(w.radius > 0);
  for (double t : {w.radius / 3, -w.radius / 7, 1e-6, -1e-9}) {
    double v = t - t * t * t * std::log(std::abs(t));
    CHECK((v > 0) == (t > 0));
  }

  // -1 - log|t| vanishes at |t| = 1/e.
  CHECK(log_lemma_test({-1.0}, {1.0}, 1.0).radius < std::exp(-1.0));

  expect_code(ErrorCode::BothIdenticallyZero, [] { log_lemma_test({0.0}, {}, 0.5); });
}

TEST_CASE("singular class beats the harmonic bound") {
  CHECK(singular_bound_test({{1.0}, 1.0}).radius == doctest::Approx(std::exp(-2.0)));
  Witness w = singular_bound_test({{0.0, 2.0}, 0.0});
  CHECK(w.radius == doctest::Approx(std::exp(-0.5)));
  CHECK(w.floor > 0);
  expect_code(ErrorCode::PreconditionViolated, [] { singular_bound_test({{0.0, 0.0}, 1.0}); });
}

TEST_CASE("randomized harness") {
  HarnessReport rep = run_asymptotics_harness(100, 20261018);
  REQUIRE(rep.cases.size() == 200);
  int kinds[4] = {0, 0, 0, 0};
  for (const auto& c : rep.cases) {
    INFO(c.kind << " #" << c.index << " " << c.error);
    CHECK(c.passed);
    kinds[c.kind == "psi-nonzero" ? 0 : c.kind == "psi-zero" ? 1 : c.kind == "n-zero" ? 2 : 3]++;
  }
  for (int k : kinds) CHECK(k > 0);
}
