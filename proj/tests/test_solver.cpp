#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "tempered/error.hpp"
#include "tempered/solver.hpp"

using namespace tempered;
using C = std::complex<double>;

namespace {

TemperedFamily square() { return TemperedFamily::from_file(TEMPERED_FIXTURES "/square.family"); }

// eta periods at `star`, read in the basis of the fresh fiber at `seed`
std::vector<double> target_from(const TemperedFamily& fam, const ParamVector& seed, const ParamVector& star) {
  auto f = transport(fam, build_fiber(fam, seed), seed, star);
  return regulator_vector(f, star).eta_periods;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::PreconditionViolated;
}

}  // namespace

TEST_CASE("scan preconditions") {
  auto tri = TemperedFamily::from_file(TEMPERED_FIXTURES "/triangle.family");
  CHECK(code_of([&] { scan_box(tri, ScanBox{}); }) == ErrorCode::GenusZeroNothingToScan);
  CHECK(enumerate_exact_points(tri, ScanBox{}).points.empty());

  auto fam = square();
  auto flat = ScanBox::square_box(C(1, 0), C(2, 0), 1);
  CHECK(flat.empty());
  CHECK(scan_box(fam, flat).nodes.empty());
  CHECK(code_of([&] { scan_box(fam, ScanBox::square_box(C(1, -1), C(2, 1), 2)); }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("scan values, mask and seeds") {
  auto fam = square();
  SolverOptions o;
  o.resolution = 5;
  auto grid = scan_box(fam, ScanBox::square_box(C(3, -1), C(5, 1), 1), o);
  REQUIRE(grid.nodes.size() == 25);
  CHECK(grid.masked_count() == 1);  // the node a = 4
  for (const auto& n : grid.nodes) {
    if (n.masked) {
      CHECK(std::abs(n.a[0] - 4.0) < 1e-12);
      CHECK_FALSE(is_nondegenerate_fiber(fam, n.a));
    } else {
      CHECK(n.value > 0);
      CHECK(n.euclidean > 0);
      CHECK(is_nondegenerate_fiber(fam, n.a));
    }
  }
  // brute-force local minimum oracle
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto& n = grid.nodes[i];
    if (n.masked) continue;
    bool best = true;
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
      const auto& m = grid.nodes[j];
      if (j == i || m.masked) continue;
      if (std::abs(m.index[0] - n.index[0]) > 1 || std::abs(m.index[1] - n.index[1]) > 1) continue;
      if (m.value < n.value || (m.value == n.value && j < i)) best = false;
    }
    if (best) minima.push_back(i);
  }
  CHECK(grid.seeds == minima);
}

TEST_CASE("scan is independent of the worker count") {
  auto fam = square();
  SolverOptions one, four;
  one.resolution = four.resolution = 7;
  one.workers = 1;
  four.workers = 4;
  auto box = ScanBox::square_box(C(0.5, -1), C(3.5, 1), 1);
  auto a = scan_box(fam, box, one), b = scan_box(fam, box, four);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(std::memcmp(&a.nodes[i].value, &b.nodes[i].value, sizeof(double)) == 0);
    CHECK(a.nodes[i].masked == b.nodes[i].masked);
  }
  CHECK(a.seeds == b.seeds);
}

TEST_CASE("Newton with an exact start returns at once") {
  SolverOptions o;
  o.newton_tol = 1e3;
  auto p = newton_refine(square(), {C(2.5, 0.3)}, o);
  CHECK(p.iterations == 0);
  CHECK(p.history.size() == 1);
}

TEST_CASE("Newton converges quadratically to a known solution") {
  auto fam = square();
  const ParamVector star{C(2.5, 0.3)}, seed{C(3.5, 0.8)};
  SolverOptions o;
  o.target = target_from(fam, seed, star);
  auto p = newton_refine(fam, seed, o);
  CHECK(std::abs(p.a[0] - star[0]) < 1e-9);
  CHECK(p.residual < o.newton_tol);
  CHECK(p.sigma_min > 0);
  // r_{k+1} ~ C r_k^q over the last steps where the residual is above roundoff
  std::vector<double> h;
  for (double r : p.history)
    if (r > 1e-13) h.push_back(r);
  REQUIRE(h.size() >= 3);
  std::size_t k = h.size() - 1;
  double q = std::log(h[k] / h[k - 1]) / std::log(h[k - 1] / h[k - 2]);
  CHECK(q >= 1.7);

  // reproduces at a tighter quadrature tolerance in extended precision
  SolverOptions fine = o;
  fine.fiber.quad_tol = 5e-13;
  fine.fiber.precision = Precision::Extended;
  auto q2 = newton_refine(fam, seed, fine);
  CHECK(std::abs(q2.a[0] - p.a[0]) < 1e-7);

  auto cert = certify_isolated(fam, p, 1e-2, 64, o);
  CHECK(cert.certified);
  CHECK_FALSE(cert.partial);
  CHECK(cert.floor > 10 * p.residual);
}

TEST_CASE("Newton failures") {
  auto fam = square();
  SolverOptions o;
  o.max_iter = 5;
  CHECK(code_of([&] { newton_refine(fam, {C(3.0, 0.5)}, o); }) == ErrorCode::Divergence);
  CHECK(code_of([&] { newton_refine(fam, {C(4.0, 0)}, o); }) == ErrorCode::SingularFiberEncountered);
  CHECK(code_of([&] { newton_refine(fam, {C(1, 0), C(2, 0)}, o); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("certificates") {
  auto fam = square();
  ExactPoint p;
  p.a = {C(2.5, 0)};
  CHECK(code_of([&] { certify_isolated(fam, p, 0, 8); }) == ErrorCode::ZeroRadius);

  // a sphere through the singular fiber a = 4: one sample lands on it
  const double r = 0.01, theta = 2 * std::numbers::pi * 31.5 / 64;
  p.a = {4.0 - std::polar(r, theta)};
  auto c = certify_isolated(fam, p, r, 64);
  CHECK(c.partial);
  CHECK(c.masked >= 1);
  CHECK(c.masked < 64);
}

TEST_CASE("deduplication") {
  std::vector<ExactPoint> pts(4);
  pts[0].a = {C(1, 0)}, pts[0].residual = 1e-11;
  pts[1].a = {C(1.05, 0)}, pts[1].residual = 1e-12;
  pts[2].a = {C(0.5, 0)}, pts[2].residual = 1e-11;
  pts[3].a = {C(1, 0.3)}, pts[3].residual = 1e-11;
  auto d = deduplicate(pts, 0.1);
  REQUIRE(d.size() == 3);
  CHECK(d[0].a[0] == C(0.5, 0));
  CHECK(d[1].a[0] == C(1, 0.3));
  CHECK(d[2].a[0] == C(1.05, 0));
}

TEST_CASE("enumeration reports") {
  auto fam = square();
  SolverOptions o;
  o.resolution = 5;
  auto rep = enumerate_exact_points(fam, ScanBox::square_box(C(2, -0.5), C(3, 0.5), 1), o);
  CHECK(rep.nodes == 25);
  CHECK(rep.refined == rep.seeds);
  CHECK(rep.seed_outcomes.size() == rep.refined);
  CHECK_FALSE(rep.all_masked);
  for (const auto& p : rep.points) CHECK(p.residual < o.newton_tol);

  o.resolution = 3;
  auto tube = enumerate_exact_points(fam, ScanBox::square_box(C(4 - 1e-9, -1e-9), C(4 + 1e-9, 1e-9), 1), o);
  CHECK(tube.all_masked);
  CHECK(tube.points.empty());

  o.resolution = 5;
  o.budget = 0;
  try {
    enumerate_or_throw(fam, ScanBox::square_box(C(2, -0.5), C(3, 0.5), 1), o);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceededError& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(e.partial().budget_exceeded);
    CHECK(e.partial().nodes == 25);
  }
  o.target = {1.0, 2.0};
  CHECK(code_of([&] { enumerate_exact_points(fam, ScanBox::square_box(C(2, -0.5), C(3, 0.5), 1), o); }) ==
        ErrorCode::PreconditionViolated);
}
