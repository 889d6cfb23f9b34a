#include "tempered/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "tempered/error.hpp"

namespace tempered {

namespace {

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double radical_inverse(std::size_t i, unsigned base) {
  double f = 1, r = 0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::vector<Eigen::VectorXd> sphere_directions(int dim, int samples) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<Eigen::VectorXd> out;
  if (dim == 2) {
    for (int k = 0; k < samples; ++k) {
      double t = 2 * std::numbers::pi * (k + 0.5) / samples;
      out.push_back(Eigen::Vector2d(std::cos(t), std::sin(t)));
    }
    return out;
  }
  if (dim > 12) throw Error(ErrorCode::PreconditionViolated, "sphere sampling supports at most 12 real dimensions");
  boost::math::normal gauss;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd v(dim);
    for (int d = 0; d < dim; ++d) v(d) = boost::math::quantile(gauss, radical_inverse(k + 1, primes[d]));
    out.push_back(v.normalized());
  }
  return out;
}

bool step_failure(ErrorCode c) {
  return c == ErrorCode::PlanInvalid || c == ErrorCode::SheetCollision || c == ErrorCode::ArgTrackingJump ||
         c == ErrorCode::QuadratureNonconvergence || c == ErrorCode::RootFindingFailure ||
         c == ErrorCode::IllConditionedABlock || c == ErrorCode::RankDeficientHomology;
}

bool fiber_trouble(ErrorCode c) {
  return c == ErrorCode::NondegenerateFiberRequired || c == ErrorCode::NumericallyAmbiguous;
}

}  // namespace

ScanBox ScanBox::square_box(std::complex<double> lo, std::complex<double> hi, int genus) {
  ScanBox b;
  for (int j = 0; j < genus; ++j) {
    b.intervals.emplace_back(lo.real(), hi.real());
    b.intervals.emplace_back(lo.imag(), hi.imag());
  }
  return b;
}

bool ScanBox::empty() const {
  if (intervals.empty()) return true;
  for (const auto& [lo, hi] : intervals)
    if (!(hi > lo)) return true;
  return false;
}

bool ScanBox::contains(const ParamVector& a, double slack) const {
  auto x = to_real(a);
  if (x.size() != dimension()) return false;
  for (int d = 0; d < dimension(); ++d)
    if (x(d) < intervals[d].first - slack || x(d) > intervals[d].second + slack) return false;
  return true;
}

ParamVector to_param(const Eigen::VectorXd& x) {
  ParamVector a;
  for (long j = 0; j + 1 < x.size(); j += 2) a.emplace_back(x(j), x(j + 1));
  return a;
}

Eigen::VectorXd to_real(const ParamVector& a) {
  Eigen::VectorXd x(2 * a.size());
  for (std::size_t j = 0; j < a.size(); ++j) x(2 * j) = a[j].real(), x(2 * j + 1) = a[j].imag();
  return x;
}

std::size_t ScanGrid::masked_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const ScanNode& n) { return n.masked; }));
}

ScanGrid scan_box(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& options) {
  const int g = fam.genus();
  if (g == 0) throw Error(ErrorCode::GenusZeroNothingToScan, "the family has no interior points");
  if (box.dimension() != 2 * g)
    throw Error(ErrorCode::PreconditionViolated, "box needs " + std::to_string(2 * g) + " real intervals");
  if (options.resolution < 1) throw Error(ErrorCode::PreconditionViolated, "resolution must be positive");
  ScanGrid grid;
  grid.box = box;
  grid.resolution = options.resolution;
  if (box.empty()) return grid;

  const int dim = 2 * g, res = options.resolution;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(res);
  grid.nodes.resize(total);
  auto coordinate = [&](int d, int i) {
    const auto& [lo, hi] = box.intervals[d];
    return res == 1 ? (lo + hi) / 2 : lo + (hi - lo) * i / (res - 1);
  };
  parallel_for(total, options.workers, [&](std::size_t n) {
    ScanNode node;
    node.index.resize(dim);
    Eigen::VectorXd x(dim);
    std::size_t rest = n;
    for (int d = dim; d-- > 0;) {
      node.index[d] = static_cast<int>(rest % res);
      rest /= res;
      x(d) = coordinate(d, node.index[d]);
    }
    node.a = to_param(x);
    try {
      auto rv = regulator_vector(fam, node.a, options.fiber);
      node.value = rv.hodge_norm;
      node.euclidean = rv.norm;
    } catch (const Error& e) {
      node.masked = true;
      node.mask_reason = std::string(to_string(e.code()));
      node.value = node.euclidean = std::numeric_limits<double>::quiet_NaN();
    }
    grid.nodes[n] = std::move(node);
  });

  // local minima over the full 3^dim neighborhood; ties go to the smaller index
  std::vector<std::size_t> stride(dim, 1);
  for (int d = dim - 1; d-- > 0;) stride[d] = stride[d + 1] * res;
  std::size_t neighborhood = 1;
  for (int d = 0; d < dim; ++d) neighborhood *= 3;
  for (std::size_t n = 0; n < total; ++n) {
    const auto& node = grid.nodes[n];
    if (node.masked || !(node.value < options.seed_threshold)) continue;
    bool minimum = true;
    for (std::size_t code = 0; code < neighborhood && minimum; ++code) {
      std::size_t c = code, m = n;
      bool inside = true, self = true;
      for (int d = dim; d-- > 0;) {
        int off = static_cast<int>(c % 3) - 1;
        c /= 3;
        if (off == 0) continue;
        self = false;
        int i = node.index[d] + off;
        if (i < 0 || i >= res) {
          inside = false;
          break;
        }
        m = off > 0 ? m + stride[d] : m - stride[d];
      }
      if (self || !inside) continue;
      const auto& other = grid.nodes[m];
      if (other.masked) continue;
      if (other.value < node.value || (other.value == node.value && m < n)) minimum = false;
    }
    if (minimum) grid.seeds.push_back(n);
  }
  return grid;
}

namespace {

Eigen::VectorXd offset_periods(const RegulatorVector& rv, const std::vector<double>& target) {
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rv.eta_periods.data(), rv.eta_periods.size());
  if (!target.empty()) r -= Eigen::Map<const Eigen::VectorXd>(target.data(), target.size());
  return r;
}

double residual_of(const RegulatorVector& rv, const std::vector<double>& target) {
  if (target.empty()) return rv.hodge_norm;
  Eigen::VectorXd r = offset_periods(rv, target);
  return hodge_norm(rv.periods, std::vector<double>(r.data(), r.data() + r.size()));
}

}  // namespace

ExactPoint newton_refine(const TemperedFamily& fam, const ParamVector& a0, const SolverOptions& options) {
  const int g = fam.genus();
  if (static_cast<int>(a0.size()) != g) throw Error(ErrorCode::IndexOutOfRange, "parameter count mismatch");
  if (!options.target.empty() && static_cast<int>(options.target.size()) != 2 * g)
    throw Error(ErrorCode::IndexOutOfRange, "target needs one value per basis cycle");
  ExactPoint pt;
  pt.seed = a0;
  pt.target = options.target;
  Eigen::VectorXd x = to_real(a0);
  CurveFiber fiber;
  RegulatorVector rv;
  try {
    rv = regulator_vector(fam, a0, options.fiber, nullptr, &fiber);
  } catch (const Error& e) {
    if (fiber_trouble(e.code())) throw Error(ErrorCode::SingularFiberEncountered, "seed lies on or near a singular fiber");
    throw;
  }
  double residual = residual_of(rv, options.target);
  pt.history.push_back(residual);

  auto finish = [&] {
    auto J = regulator_jacobian(rv.periods);
    pt.a = to_param(x);
    pt.residual = residual;
    pt.condition = J.condition;
    pt.sigma_min = J.sigma_min;
    pt.full_periods = rv.full_periods;
    return pt;
  };
  if (residual < options.newton_tol) return finish();

  for (int it = 1; it <= options.max_iter; ++it) {
    auto J = regulator_jacobian(rv.periods);
    if (!(J.condition < options.max_condition))
      throw Error(ErrorCode::JacobianIllConditioned, "Jacobian condition " + std::to_string(J.condition));
    Eigen::VectorXd r = offset_periods(rv, options.target);
    Eigen::VectorXd step = -J.J.colPivHouseholderQr().solve(r);
    if (step.norm() > options.max_step) step *= options.max_step / step.norm();
    const double merit = r.norm();
    double lambda = 1;
    bool singular = false, accepted = false;
    Eigen::VectorXd trial;
    CurveFiber next;
    RegulatorVector rt;
    while (lambda >= 1.0 / 1024) {
      trial = x + lambda * step;
      try {
        next = transport(fam, fiber, to_param(x), to_param(trial), options.fiber);
        rt = regulator_vector(next, to_param(trial));
        if (offset_periods(rt, options.target).norm() <= (1 - 1e-4 * lambda) * merit) {
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        if (fiber_trouble(e.code())) singular = true;
        else if (!step_failure(e.code())) throw;
      }
      lambda /= 2;
    }
    if (!accepted) {
      if (singular) throw Error(ErrorCode::SingularFiberEncountered, "Newton path runs into a singular fiber");
      throw Error(ErrorCode::Divergence, "no decrease along the Newton direction");
    }
    x = trial;
    fiber = std::move(next);
    rv = std::move(rt);
    residual = residual_of(rv, options.target);
    pt.iterations = it;
    pt.history.push_back(residual);
    if (residual < options.newton_tol) return finish();
  }
  throw Error(ErrorCode::Divergence, "no convergence within " + std::to_string(options.max_iter) + " iterations");
}

Certificate certify_isolated(const TemperedFamily& fam, const ExactPoint& point, double radius, int samples,
                             const SolverOptions& options) {
  if (!(radius > 0)) throw Error(ErrorCode::ZeroRadius, "isolation radius must be positive");
  if (samples < 1) throw Error(ErrorCode::PreconditionViolated, "at least one sample is needed");
  Eigen::VectorXd center = to_real(point.a);
  auto dirs = sphere_directions(static_cast<int>(center.size()), samples);
  // With a target the periods must be read in the seed's basis, carried to the center.
  std::optional<CurveFiber> carried;
  if (!point.target.empty())
    carried = transport(fam, build_fiber(fam, point.seed, options.fiber), point.seed, point.a, options.fiber);
  std::vector<double> values(dirs.size());
  std::vector<char> masked(dirs.size(), 0);
  parallel_for(dirs.size(), options.workers, [&](std::size_t k) {
    ParamVector a = to_param(center + radius * dirs[k]);
    try {
      if (carried) {
        auto f = transport(fam, *carried, point.a, a, options.fiber);
        values[k] = residual_of(regulator_vector(f, a), point.target);
      } else {
        values[k] = regulator_vector(fam, a, options.fiber).hodge_norm;
      }
    } catch (const Error& e) {
      if (!fiber_trouble(e.code())) throw;
      masked[k] = 1;
    }
  });
  Certificate c;
  c.radius = radius;
  c.samples = samples;
  c.floor = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    if (masked[k]) ++c.masked;
    else c.floor = std::min(c.floor, values[k]);
  }
  c.partial = c.masked > 0;
  c.certified = c.masked < samples && c.floor > 10 * point.residual;
  return c;
}

std::vector<ExactPoint> deduplicate(std::vector<ExactPoint> points, double merge_radius) {
  std::vector<ExactPoint> out;
  for (auto& p : points) {
    bool merged = false;
    for (auto& q : out)
      if ((to_real(p.a) - to_real(q.a)).norm() < merge_radius) {
        if (p.residual < q.residual) q = p;
        merged = true;
        break;
      }
    if (!merged) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const ExactPoint& p, const ExactPoint& q) {
    auto x = to_real(p.a), y = to_real(q.a);
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  return out;
}

EnumerationReport refine_seeds(const TemperedFamily& fam, const ScanBox& box, std::vector<ParamVector> seeds,
                               const SolverOptions& options) {
  if (!options.target.empty())
    throw Error(ErrorCode::PreconditionViolated, "targets are basis dependent and cannot be shared between seeds");
  EnumerationReport rep;
  if (fam.genus() == 0) return rep;
  rep.seeds = seeds.size();
  if (seeds.size() > options.budget) {
    rep.budget_exceeded = true;
    seeds.resize(options.budget);
  }

  SolverOptions inner = options;
  inner.workers = 1;
  std::vector<std::optional<ExactPoint>> refined(seeds.size());
  std::vector<std::string> outcome(seeds.size(), "converged");
  parallel_for(seeds.size(), options.workers, [&](std::size_t k) {
    try {
      refined[k] = newton_refine(fam, seeds[k], inner);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Divergence && e.code() != ErrorCode::SingularFiberEncountered &&
          e.code() != ErrorCode::JacobianIllConditioned && !fiber_trouble(e.code()) &&
          !step_failure(e.code()))
        throw;
      outcome[k] = std::string(to_string(e.code()));
    }
  });
  rep.refined = seeds.size();

  std::vector<ExactPoint> inside;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    auto& r = refined[k];
    if (!r) ++rep.failed;
    else if (box.contains(r->a, 1e-9)) inside.push_back(std::move(*r));
    else outcome[k] = "left-box";
    rep.seed_outcomes.emplace_back(seeds[k], outcome[k]);
  }
  rep.points = deduplicate(std::move(inside), 10 * options.isolation_radius);
  for (auto& p : rep.points) {
    p.certificate = certify_isolated(fam, p, options.isolation_radius, options.sphere_samples, options);
    p.torsion = torsion_from_periods(p.full_periods, options.max_denominator, options.torsion_tol);
  }
  return rep;
}

EnumerationReport enumerate_exact_points(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& options) {
  if (!options.target.empty())
    throw Error(ErrorCode::PreconditionViolated, "targets are basis dependent and cannot be shared between seeds");
  if (fam.genus() == 0) return {};
  auto grid = scan_box(fam, box, options);
  std::vector<ParamVector> seeds;
  for (std::size_t s : grid.seeds) seeds.push_back(grid.nodes[s].a);
  EnumerationReport rep = refine_seeds(fam, box, std::move(seeds), options);
  rep.nodes = grid.nodes.size();
  rep.masked = grid.masked_count();
  rep.all_masked = rep.nodes > 0 && rep.masked == rep.nodes;
  return rep;
}

EnumerationReport enumerate_or_throw(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& options) {
  auto rep = enumerate_exact_points(fam, box, options);
  if (rep.budget_exceeded) throw BudgetExceededError(std::move(rep));
  return rep;
}

}  // namespace tempered
