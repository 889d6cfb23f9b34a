#include <random>

#include "doctest.h"
#include "tempered/error.hpp"
#include "tempered/family.hpp"

using namespace tempered;
using C = std::complex<double>;

namespace {

TemperedFamily square() { return TemperedFamily::from_file(TEMPERED_FIXTURES "/square.family"); }

}  // namespace

TEST_CASE("evaluate") {
  auto fam = square();
  CHECK(std::abs(evaluate(fam, {0.0}, 1.0, 1.0) - 4.0) < 1e-15);
  CHECK(std::abs(evaluate(fam, {-4.0}, 1.0, 1.0)) < 1e-15);
  CHECK(std::abs(evaluate(fam, {0.0}, C(0, 1), C(0, 1))) < 1e-15);
  CHECK_THROWS_AS(evaluate(fam, {0.0}, 0.0, 1.0), Error);
  CHECK_THROWS_AS(evaluate(fam, {0.0, 1.0}, 1.0, 1.0), Error);
}

TEST_CASE("partials") {
  LaurentPolynomial xy = LaurentPolynomial::monomial({1, 1});
  auto p = partials(xy, 2.0, 3.0);
  CHECK(std::abs(p.f - 6.0) < 1e-15);
  CHECK(std::abs(p.f_x1 - 3.0) < 1e-15);
  CHECK(std::abs(p.f_x2 - 2.0) < 1e-15);
  auto q = partials(LaurentPolynomial::monomial({-1, 0}), 2.0, 1.0);
  CHECK(std::abs(q.f - 0.5) < 1e-15);
  CHECK(std::abs(q.f_x1 + 0.25) < 1e-15);
  CHECK(std::abs(q.f_x2) < 1e-15);
  auto s = partials(square(), {1.0}, 1.0, 1.0);
  CHECK(std::abs(s.f - 5.0) < 1e-15);
  CHECK(std::abs(s.f_x1) < 1e-15);
  CHECK(std::abs(s.f_x2) < 1e-15);
}

TEST_CASE("partials match central differences") {
  auto fam = TemperedFamily::from_file(TEMPERED_FIXTURES "/genus2.family");
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> mod(0.5, 2.0), ang(-3.14, 3.14), u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    C x1 = std::polar(mod(rng), ang(rng)), x2 = std::polar(mod(rng), ang(rng));
    ParamVector a{C(u(rng), u(rng)), C(u(rng), u(rng))};
    auto p = partials(fam, a, x1, x2);
    double h = 1e-6;
    C fd1 = (evaluate(fam, a, x1 + h, x2) - evaluate(fam, a, x1 - h, x2)) / (2 * h);
    C fd2 = (evaluate(fam, a, x1, x2 + h) - evaluate(fam, a, x1, x2 - h)) / (2 * h);
    CHECK(std::abs(p.f_x1 - fd1) <= 1e-6 * (1 + std::abs(p.f_x1)));
    CHECK(std::abs(p.f_x2 - fd2) <= 1e-6 * (1 + std::abs(p.f_x2)));
  }
}

TEST_CASE("evaluate is linear in a") {
  auto fam = TemperedFamily::from_file(TEMPERED_FIXTURES "/genus2.family");
  ParamVector a{C(0.3, 1), C(-2, 0.5)}, b{C(1, -1), C(0.25, 2)}, ab{a[0] + b[0], a[1] + b[1]};
  C x1(0.7, -0.4), x2(1.3, 0.2);
  C lhs = evaluate(fam, ab, x1, x2) - evaluate(fam, a, x1, x2);
  C rhs = b[0] + b[1] * x1;
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("nondegeneracy of the square family") {
  auto fam = square();
  CHECK_FALSE(is_nondegenerate_fiber(fam, {4.0}));
  CHECK_FALSE(is_nondegenerate_fiber(fam, {-4.0}));
  CHECK_FALSE(is_nondegenerate_fiber(fam, {0.0}));
  CHECK(is_nondegenerate_fiber(fam, {1.0}));
  auto rep = fiber_report(fam, {4.0});
  CHECK(std::abs(rep.witness_x1 + 1.0) < 1e-6);
  CHECK(std::abs(rep.witness_x2 + 1.0) < 1e-6);

  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 30; ++i) {
    C a(u(rng), u(rng));
    if (std::min({std::abs(a - 4.0), std::abs(a + 4.0), std::abs(a)}) < 0.05) continue;
    CHECK(is_nondegenerate_fiber(fam, {a}));
  }
  try {
    is_nondegenerate_fiber(fam, {C(4.0 + 1e-8, 0)});
    FAIL("expected ambiguity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NumericallyAmbiguous);
  }
}

TEST_CASE("genus and dF/da") {
  CHECK(genus(square()) == 1);
  CHECK(genus(TemperedFamily::from_file(TEMPERED_FIXTURES "/triangle.family")) == 0);
  LaurentPolynomial tri3;
  tri3.add_term({0, 0}, Coefficient::integer(1));
  tri3.add_term({3, 0}, Coefficient::integer(1));
  tri3.add_term({0, 3}, Coefficient::integer(1));
  CHECK(newton_polygon(tri3).genus() == 1);

  CHECK(dF_da(square(), 1) == LaurentPolynomial::monomial({0, 0}));
  auto g2 = TemperedFamily::from_file(TEMPERED_FIXTURES "/genus2.family");
  CHECK(dF_da(g2, 2) == LaurentPolynomial::monomial({1, 0}));
  CHECK_THROWS_AS(dF_da(g2, 3), Error);
  CHECK_THROWS_AS(dF_da(g2, 0), Error);
  auto d1 = dF_da(g2, 1);
  CHECK(d1 == dF_da(g2, 1));
}
