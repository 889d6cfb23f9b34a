#include "tempered/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tempered/error.hpp"

namespace tempered {

namespace {

using engine::CurveModel;
using engine::PathIntegrals;
using engine::Segment;
using CD = std::complex<double>;

constexpr double kPi = std::numbers::pi;

Exponent clearing_shift(const LaurentPolynomial& p) {
  int m1 = 0, m2 = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first || e[0] < m1) m1 = e[0];
    if (first || e[1] < m2) m2 = e[1];
    first = false;
  }
  return {-m1, -m2};
}

double segment_distance(CD p, CD a, CD b) {
  CD d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

void add_cluster(std::vector<CD>& pts, CD z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
  for (const auto& p : pts)
    if (std::abs(p - z) < 1e-7 * std::max(1.0, std::abs(z))) return;
  pts.push_back(z);
}

std::vector<CD> compute_punctures(const BivariatePoly<double>& F) {
  std::vector<CD> pts{CD(0)};
  for (const auto& [x1, x2] : critical_points_of_projection(F)) add_cluster(pts, x1);
  for (auto coeff : {F.c.back(), F.c.front()}) {
    trim_poly(coeff, 1e-14);
    for (auto z : poly_roots(coeff)) add_cluster(pts, z);
  }
  std::sort(pts.begin(), pts.end(), [](CD a, CD b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return pts;
}

double base_point_score(CD x0, const std::vector<CD>& pts) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    s = std::min(s, std::abs(x0 - pts[j]));
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != j) s = std::min(s, segment_distance(pts[k], x0, pts[j]));
  }
  return s;
}

CD choose_base_point(const std::vector<CD>& pts) {
  double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
  }
  double span = std::max({xmax - xmin, ymax - ymin, 1.0});
  double margin = 0.3 * span;
  const int G = 15;
  CD best = 0;
  double best_score = -1;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      CD x0((xmin - margin) + (xmax - xmin + 2 * margin) * i / (G - 1) + 0.0123 * span,
            (ymin - margin) + (ymax - ymin + 2 * margin) * j / (G - 1) + 0.0371 * span);
      double s = base_point_score(x0, pts);
      if (s > best_score) best_score = s, best = x0;
    }
  if (best_score <= 0) throw Error(ErrorCode::RootFindingFailure, "no admissible base point");
  return best;
}

std::vector<double> lasso_radii(CD x0, const std::vector<CD>& pts) {
  std::vector<double> r(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double rho = 0.5 * std::abs(x0 - pts[k]);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == k) continue;
      rho = std::min(rho, 0.4 * std::abs(pts[j] - pts[k]));
      rho = std::min(rho, 0.6 * segment_distance(pts[k], x0, pts[j]));
    }
    r[k] = rho;
  }
  return r;
}

template <class T>
Cx<T> to(CD z) {
  return {T(z.real()), T(z.imag())};
}

CD from(Cx<double> z) { return z; }
CD from(Cx<long double> z) { return {double(z.real()), double(z.imag())}; }

template <class T>
PathIntegrals<double> demote(const PathIntegrals<T>& p) {
  PathIntegrals<double> out;
  for (const auto& w : p.omega) out.omega.push_back(from(w));
  out.eta = double(p.eta);
  out.J = from(p.J);
  out.D1 = from(p.D1);
  out.D2 = from(p.D2);
  return out;
}

template <class T>
int nearest(const std::vector<Cx<T>>& v, Cx<T> z, T& dist) {
  int best = -1;
  dist = std::numeric_limits<T>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (std::abs(v[k] - z) < dist) dist = std::abs(v[k] - z), best = static_cast<int>(k);
  return best;
}

template <class T>
T separation(const std::vector<Cx<T>>& v) {
  T m = std::numeric_limits<T>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) m = std::min(m, std::abs(v[i] - v[j]));
  return m;
}

// Matches roots b to labels of roots a; fails unless the assignment is clear-cut.
template <class T>
Permutation match_roots(const std::vector<Cx<T>>& a, const std::vector<Cx<T>>& b, ErrorCode code) {
  T sep = separation(a);
  Permutation p(b.size());
  std::vector<bool> used(a.size(), false);
  for (std::size_t s = 0; s < b.size(); ++s) {
    T d;
    int k = nearest(a, b[s], d);
    if (k < 0 || used[k] || !(d < T(0.25) * sep)) throw Error(code, "sheet labels could not be matched");
    used[k] = true;
    p[s] = k;
  }
  return p;
}

template <class T>
struct LassoRun {
  Permutation perm;
  std::vector<PathIntegrals<T>> sheets;
};

template <class T>
LassoRun<T> run_lasso(const CurveModel<T>& M, Cx<T> x0, const std::vector<Cx<T>>& base, Cx<T> p, T rho, T tol,
                      engine::QuadratureStats& stats) {
  Cx<T> dir = (x0 - p) / std::abs(x0 - p);
  Cx<T> q = p + rho * dir;
  auto tail = Segment<T>::line(x0, q);
  auto tail_track = M.track(tail, base);
  auto tail_int = M.integrate(tail, tail_track, tol, &stats);
  const std::vector<Cx<T>> at_q = tail_track.r.back();

  std::vector<Cx<T>> cur = at_q;
  std::vector<PathIntegrals<T>> circle(base.size());
  Cx<T> start = q;
  for (int k = 0; k < 4; ++k) {
    auto arc = Segment<T>::circle_arc(p, start, std::numbers::pi_v<T> / 2);
    auto tr = M.track(arc, cur);
    auto part = M.integrate(arc, tr, tol, &stats);
    for (std::size_t s = 0; s < base.size(); ++s) circle[s].then(part[s]);
    cur = tr.r.back();
    start = arc.end();
  }
  LassoRun<T> out;
  out.perm = match_roots(at_q, cur, ErrorCode::SheetCollision);
  out.sheets.resize(base.size());
  for (std::size_t s = 0; s < base.size(); ++s) {
    out.sheets[s] = tail_int[s];
    out.sheets[s].then(circle[s]);
    out.sheets[s].then(tail_int[out.perm[s]].reversed());
  }
  return out;
}

void rebuild_basis(CurveFiber& f) {
  const auto& plan = f.plan;
  f.basis.clear();
  for (long r = 0; r < plan.transform.rows(); ++r) {
    Cycle c;
    for (long k = 0; k < plan.transform.cols(); ++k)
      if (plan.transform(r, k) != 0) c.lasso_terms.emplace_back(plan.transform(r, k), plan.candidates[k]);
    f.basis.push_back(std::move(c));
  }
}

template <class T>
void build_core(CurveFiber& f, const FiberPlan* reuse) {
  CurveModel<T> M(engine::bivariate_from<T>(f.polynomial, f.shift), f.differentials);
  auto Fd = engine::bivariate_from<double>(f.polynomial, f.shift);
  std::vector<CD> pts = compute_punctures(Fd);
  FiberPlan& plan = f.plan;
  std::vector<Cx<T>> base;

  if (reuse) {
    plan = *reuse;
    if (pts.size() != reuse->punctures.size()) throw Error(ErrorCode::PlanInvalid, "puncture count changed");
    std::vector<bool> hit(pts.size(), false);
    for (const auto& z : pts) {
      bool found = false;
      for (std::size_t j = 0; j < reuse->punctures.size(); ++j)
        if (!hit[j] && std::abs(z - reuse->punctures[j]) < 0.5 * reuse->radii[j]) {
          hit[j] = found = true;
          break;
        }
      if (!found) throw Error(ErrorCode::PlanInvalid, "a puncture left its lasso disk");
    }
    auto roots = M.sorted_roots(to<T>(plan.base_point));
    std::vector<Cx<T>> old;
    for (auto z : reuse->base_sheets) old.push_back(to<T>(z));
    Permutation lab = match_roots(old, roots, ErrorCode::PlanInvalid);
    base.resize(roots.size());
    for (std::size_t s = 0; s < roots.size(); ++s) base[lab[s]] = roots[s];
  } else {
    plan = FiberPlan{};
    plan.punctures = pts;
    plan.base_point = choose_base_point(pts);
    plan.radii = lasso_radii(plan.base_point, pts);
    for (const auto& p : pts) plan.tail_angles.push_back(std::arg(p - plan.base_point));
    base = M.sorted_roots(to<T>(plan.base_point));
  }
  plan.base_sheets.clear();
  for (auto z : base) plan.base_sheets.push_back(from(z));
  if (static_cast<int>(base.size()) != f.sheets)
    throw Error(ErrorCode::RootFindingFailure, "wrong number of sheets at the base point");

  const T tol = T(f.options.quad_tol);
  f.lassos.clear();
  std::vector<Permutation> mono;
  for (std::size_t j = 0; j < plan.punctures.size(); ++j) {
    auto run = run_lasso<T>(M, to<T>(plan.base_point), base, to<T>(plan.punctures[j]), T(plan.radii[j]), tol, f.stats);
    mono.push_back(run.perm);
    std::vector<PathIntegrals<double>> sheets;
    for (const auto& s : run.sheets) sheets.push_back(demote(s));
    f.lassos.push_back(std::move(sheets));
  }

  if (reuse) {
    if (mono != reuse->monodromy) throw Error(ErrorCode::PlanInvalid, "monodromy changed along the transport");
  } else {
    plan.monodromy = mono;
    plan.candidates = schreier_loops(mono, f.sheets);
    plan.intersections = intersection_matrix(plan.candidates, mono, plan.tail_angles);
    auto sb = symplectic_reduction(plan.intersections);
    if (sb.genus != f.genus)
      throw Error(ErrorCode::RankDeficientHomology, "intersection pairing has rank " + std::to_string(2 * sb.genus) +
                                                        ", expected " + std::to_string(2 * f.genus));
    plan.transform = sb.transform;
  }

  rebuild_basis(f);
}

template <class T>
PathIntegrals<T> track_polyline(const CurveModel<T>& M, const std::vector<CD>& path, std::vector<Cx<T>>& roots,
                                T tol, int sheet) {
  PathIntegrals<T> total;
  total.omega.assign(M.genus(), Cx<T>{0});
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto seg = Segment<T>::line(to<T>(path[i]), to<T>(path[i + 1]));
    auto tr = M.track(seg, roots);
    if (sheet >= 0) total.then(M.integrate(seg, tr, tol)[sheet]);
    roots = tr.r.back();
  }
  return total;
}

template <class T>
CycleValue polyline_value(const CurveFiber& f, const PolylineLoop& loop) {
  CurveModel<T> M(engine::bivariate_from<T>(f.polynomial, f.shift), f.differentials);
  std::vector<CD> path = loop.vertices;
  if (path.size() < 2) throw Error(ErrorCode::PreconditionViolated, "polyline needs at least two vertices");
  if (path.back() != path.front()) path.push_back(path.front());
  auto start = M.sorted_roots(to<T>(path.front()));
  if (loop.start_sheet < 0 || loop.start_sheet >= static_cast<int>(start.size()))
    throw Error(ErrorCode::IndexOutOfRange, "start sheet out of range");
  std::vector<Cx<T>> roots = start;
  auto P = track_polyline<T>(M, path, roots, T(f.options.quad_tol), loop.start_sheet);
  T d;
  int end = nearest(start, roots[loop.start_sheet], d);
  if (end != loop.start_sheet || !(d < T(0.25) * separation(start)))
    throw Error(ErrorCode::PreconditionViolated, "polyline does not close on the surface");
  CycleValue v;
  for (const auto& w : P.omega) v.omega.push_back(from(w));
  v.eta = double(P.eta);
  Cx<T> L0 = std::log(to<T>(path.front()));
  T m1 = std::round(P.D1.imag() / (2 * std::numbers::pi_v<T>));
  Cx<T> full = L0 * P.D2 + P.J - Cx<T>(0, 2 * std::numbers::pi_v<T>) * m1 * std::log(start[loop.start_sheet]);
  v.full = from(full);
  return v;
}

CycleValue lasso_value(const CurveFiber& f, const LassoLoop& loop) {
  const auto& mono = f.plan.monodromy;
  PathIntegrals<double> P;
  P.omega.assign(f.differentials.size(), CD(0));
  int s = loop.start_sheet;
  for (const auto& st : loop.word) {
    if (st.puncture < 0 || st.puncture >= static_cast<int>(mono.size()))
      throw Error(ErrorCode::IndexOutOfRange, "lasso index out of range");
    if (st.direction > 0) {
      P.then(f.lassos[st.puncture][s]);
      s = mono[st.puncture][s];
    } else {
      int prev = apply(st, s, mono);
      P.then(f.lassos[st.puncture][prev].reversed());
      s = prev;
    }
  }
  if (s != loop.start_sheet) throw Error(ErrorCode::PreconditionViolated, "lasso word does not close on the surface");
  CycleValue v;
  v.omega = P.omega;
  v.eta = P.eta;
  double m1 = std::round(P.D1.imag() / (2 * kPi));
  v.full = std::log(f.plan.base_point) * P.D2 + P.J -
           CD(0, 2 * kPi) * m1 * std::log(f.plan.base_sheets[loop.start_sheet]);
  return v;
}

template <class T>
std::vector<CD> continue_roots(const CurveFiber& f, const std::vector<CD>& path, const std::vector<CD>& start) {
  CurveModel<T> M(engine::bivariate_from<T>(f.polynomial, f.shift), f.differentials);
  std::vector<Cx<T>> roots;
  for (auto z : start) roots.push_back(to<T>(z));
  track_polyline<T>(M, path, roots, T(f.options.quad_tol), -1);
  std::vector<CD> out;
  for (auto z : roots) out.push_back(from(z));
  return out;
}

}  // namespace

Cycle Cycle::reversed() const {
  Cycle c = *this;
  for (auto& t : c.lasso_terms) t.first = -t.first;
  for (auto& t : c.polyline_terms) t.first = -t.first;
  return c;
}

Cycle as_cycle(const LassoLoop& loop, long multiplicity) {
  Cycle c;
  c.lasso_terms.emplace_back(multiplicity, loop);
  return c;
}

Cycle as_cycle(const PolylineLoop& loop, long multiplicity) {
  Cycle c;
  c.polyline_terms.emplace_back(multiplicity, loop);
  return c;
}

CurveFiber build_fiber(const LaurentPolynomial& p, const FiberOptions& options, const FiberPlan* reuse,
                       std::optional<std::vector<Exponent>> differentials) {
  CurveFiber f;
  f.polynomial = p;
  f.options = options;
  f.shift = clearing_shift(p);
  // A segment-shaped support is a rational curve: genus 0, no differentials.
  std::optional<NewtonPolygon> poly;
  try {
    poly = newton_polygon(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegeneratePolygon || p.size() < 2) throw;
  }
  if (differentials) {
    f.differentials = *differentials;
  } else if (poly) {
    for (const auto& m : poly->interior_points) f.differentials.push_back({m[0] + f.shift[0], m[1] + f.shift[1]});
  }
  f.genus = poly ? poly->genus() : 0;
  int d2 = 0;
  for (const auto& [e, c] : p.terms()) d2 = std::max(d2, e[1] + f.shift[1]);
  f.sheets = d2;
  if (f.sheets < 2) {
    if (f.genus == 0) return f;
    throw Error(ErrorCode::PreconditionViolated, "x2-degree below 2 with positive genus");
  }
  if (options.precision == Precision::Extended)
    build_core<long double>(f, reuse);
  else
    build_core<double>(f, reuse);
  return f;
}

CurveFiber build_fiber(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options,
                       const FiberPlan* reuse) {
  FiberReport rep = fiber_report(fam, a, options.nondegeneracy);
  if (!rep.edges_squarefree || rep.min_residual < options.nondegeneracy.low)
    throw Error(ErrorCode::NondegenerateFiberRequired, "fiber is singular");
  if (rep.min_residual <= options.nondegeneracy.high)
    throw Error(ErrorCode::NumericallyAmbiguous, "fiber is numerically close to singular");
  std::vector<Exponent> diffs;
  Exponent s = fam.clearing_shift();
  for (const auto& m : fam.interior_monomials()) diffs.push_back({m[0] + s[0], m[1] + s[1]});
  return build_fiber(fam.fiber(a), options, reuse, diffs);
}

std::vector<BranchPoint> branch_points(const CurveFiber& f) {
  std::vector<BranchPoint> out;
  for (std::size_t j = 0; j < f.plan.monodromy.size(); ++j) {
    const auto& p = f.plan.monodromy[j];
    std::vector<bool> seen(p.size(), false);
    BranchPoint bp{f.plan.punctures[j], {}};
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (seen[s]) continue;
      int len = 0;
      for (std::size_t k = s; !seen[k]; k = p[k]) seen[k] = true, ++len;
      if (len > 1) bp.cycle_type.push_back(len);
    }
    if (!bp.cycle_type.empty()) out.push_back(bp);
  }
  return out;
}

std::vector<CD> sheets_at(const CurveFiber& f, CD x1) {
  if (f.options.precision == Precision::Extended) {
    CurveModel<long double> M(engine::bivariate_from<long double>(f.polynomial, f.shift), f.differentials);
    std::vector<CD> out;
    for (auto z : M.sorted_roots(to<long double>(x1))) out.push_back(from(z));
    return out;
  }
  CurveModel<double> M(engine::bivariate_from<double>(f.polynomial, f.shift), f.differentials);
  return M.sorted_roots(x1);
}

std::vector<CD> analytic_continue(const CurveFiber& f, const std::vector<CD>& path, const std::vector<CD>& start) {
  if (f.options.precision == Precision::Extended) return continue_roots<long double>(f, path, start);
  return continue_roots<double>(f, path, start);
}

Permutation continuation_permutation(const CurveFiber& f, const std::vector<CD>& closed_path) {
  std::vector<CD> path = closed_path;
  if (path.back() != path.front()) path.push_back(path.front());
  auto start = sheets_at(f, path.front());
  auto end = analytic_continue(f, path, start);
  return match_roots(start, end, ErrorCode::SheetCollision);
}

HomologyBasis homology_basis(const CurveFiber& f) {
  HomologyBasis hb;
  hb.cycles = f.basis;
  if (f.genus > 0) hb.intersection = f.plan.transform * f.plan.intersections * f.plan.transform.transpose();
  return hb;
}

CycleValue integrate_cycle(const CurveFiber& f, const Cycle& cycle) {
  CycleValue total;
  total.omega.assign(f.differentials.size(), CD(0));
  auto accumulate = [&](long m, const CycleValue& v) {
    for (std::size_t k = 0; k < total.omega.size(); ++k) total.omega[k] += double(m) * v.omega[k];
    total.eta += double(m) * v.eta;
    total.full += double(m) * v.full;
  };
  for (const auto& [m, loop] : cycle.lasso_terms) accumulate(m, lasso_value(f, loop));
  for (const auto& [m, loop] : cycle.polyline_terms)
    accumulate(m, f.options.precision == Precision::Extended ? polyline_value<long double>(f, loop)
                                                              : polyline_value<double>(f, loop));
  return total;
}

std::complex<double> integrate_differential(const CurveFiber& f, const Cycle& cycle, int k) {
  if (k < 0 || k >= static_cast<int>(f.differentials.size()))
    throw Error(ErrorCode::IndexOutOfRange, "differential index out of range");
  return integrate_cycle(f, cycle).omega[k];
}

namespace {

Eigen::MatrixXd real_periods(const CurveFiber& f) {
  const int g = f.genus;
  Eigen::MatrixXd R(2 * g, 2 * g);
  for (int k = 0; k < 2 * g; ++k) {
    auto v = integrate_cycle(f, f.basis[k]);
    for (int j = 0; j < g; ++j) R(2 * j, k) = v.omega[j].real(), R(2 * j + 1, k) = v.omega[j].imag();
  }
  return R;
}

CurveFiber hop(const TemperedFamily& fam, const CurveFiber& from, const ParamVector& to, const FiberOptions& options) {
  CurveFiber carried = build_fiber(fam, to, options, &from.plan);
  CurveFiber fresh = build_fiber(fam, to, options);
  rebase(fresh, basis_change(fresh, carried));
  return fresh;
}

}  // namespace

IntMatrix basis_change(const CurveFiber& target, const CurveFiber& reference) {
  if (target.genus != reference.genus || target.genus == 0)
    throw Error(ErrorCode::PreconditionViolated, "basis change needs two fibers of the same positive genus");
  Eigen::MatrixXd Rt = real_periods(target), Rr = real_periods(reference);
  Eigen::MatrixXd M = Rt.colPivHouseholderQr().solve(Rr);
  IntMatrix out = M.array().round().cast<long>().matrix();
  double defect = (M - out.cast<double>()).cwiseAbs().maxCoeff();
  if (!(defect < 1e-4)) throw Error(ErrorCode::PlanInvalid, "periods do not differ by an integral basis change");
  const long g = target.genus;
  IntMatrix J = IntMatrix::Zero(2 * g, 2 * g);
  J.topRightCorner(g, g) = IntMatrix::Identity(g, g);
  J.bottomLeftCorner(g, g) = -IntMatrix::Identity(g, g);
  if (out.transpose() * J * out != J) throw Error(ErrorCode::PlanInvalid, "basis change is not symplectic");
  return out;
}

void rebase(CurveFiber& fiber, const IntMatrix& M) {
  fiber.plan.transform = M.transpose() * fiber.plan.transform;
  rebuild_basis(fiber);
}

CurveFiber transport(const TemperedFamily& fam, const CurveFiber& from, const ParamVector& a_from,
                     const ParamVector& a_to, const FiberOptions& options, int max_depth) {
  auto at = [&](double s) {
    ParamVector a(a_to.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = a_from[j] + s * (a_to[j] - a_from[j]);
    return a;
  };
  const double h_min = std::ldexp(1.0, -max_depth);
  CurveFiber current = from;
  double s = 0, h = 1;
  while (s < 1) {
    h = std::min(h, 1 - s);
    try {
      current = hop(fam, current, at(s + h), options);
      s += h;
      h *= 2;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PlanInvalid) throw;
      h /= 2;
      if (h < h_min) throw Error(ErrorCode::PlanInvalid, "transport step underflow");
    }
  }
  return current;
}

}  // namespace tempered
