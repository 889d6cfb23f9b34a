#include "tempered/appendix_pde.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "tempered/error.hpp"

namespace tempered {

namespace {

using cd = std::complex<double>;

cd horner(const std::vector<cd>& c, cd t) {
  cd v{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

std::vector<cd> derivative(const std::vector<cd>& c) {
  std::vector<cd> d;
  for (std::size_t j = 1; j < c.size(); ++j) d.push_back(double(j) * c[j]);
  return d;
}

int weight(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

// Sum of |c z^alpha|: the size against which cancellation in F(z) is judged.
double magnitude(const MultiPoly& p, const Eigen::VectorXcd& z) {
  double s = 0;
  for (const auto& [a, c] : p.terms()) {
    double m = std::abs(c);
    for (int k = 0; k < p.dimension(); ++k) m *= std::pow(std::abs(z[k]), a[k]);
    s += m;
  }
  return s;
}

}  // namespace

MultiPoly MultiPoly::constant(int d, cd c) {
  MultiPoly p(d);
  p.add_term(MultiIndex(d, 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(const MultiIndex& alpha, cd c) {
  MultiPoly p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

MultiPoly MultiPoly::variable(int d, int k) {
  MultiIndex e(d, 0);
  e[k] = 1;
  return monomial(e);
}

int MultiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [a, c] : terms_) deg = std::max(deg, weight(a));
  return deg;
}

cd MultiPoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? cd{0} : it->second;
}

void MultiPoly::add_term(const MultiIndex& alpha, cd c) {
  if (static_cast<int>(alpha.size()) != d_) throw Error(ErrorCode::PreconditionViolated, "multi-index size");
  if (c == cd{0}) return;
  auto [it, fresh] = terms_.emplace(alpha, c);
  if (!fresh) {
    it->second += c;
    if (it->second == cd{0}) terms_.erase(it);
  }
}

cd MultiPoly::operator()(const Eigen::VectorXcd& z) const {
  cd v{0};
  for (const auto& [a, c] : terms_) {
    cd m = c;
    for (int k = 0; k < d_; ++k)
      if (a[k]) m *= std::pow(z[k], a[k]);
    v += m;
  }
  return v;
}

MultiPoly MultiPoly::derivative(int k) const {
  MultiPoly out(d_);
  for (const auto& [a, c] : terms_)
    if (a[k] > 0) {
      MultiIndex b = a;
      --b[k];
      out.add_term(b, c * double(a[k]));
    }
  return out;
}

std::vector<cd> MultiPoly::along_ray(const Eigen::VectorXcd& z0) const {
  std::vector<cd> out(std::max(total_degree(), 0) + 1, cd{0});
  for (const auto& [a, c] : terms_) {
    cd m = c;
    for (int k = 0; k < d_; ++k)
      if (a[k]) m *= std::pow(z0[k], a[k]);
    out[weight(a)] += m;
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
  for (const auto& [a, c] : b.terms_) add_term(a, c);
  return *this;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + cd(-1) * b; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out(a.d_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MultiIndex e(a.d_);
      for (int k = 0; k < a.d_; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly operator*(cd c, const MultiPoly& a) {
  MultiPoly out(a.d_);
  for (const auto& [e, v] : a.terms_) out.add_term(e, c * v);
  return out;
}

MultiPoly MonomialUnit::expand() const {
  if (identically_zero) return MultiPoly(unit.dimension());
  return MultiPoly::monomial(alpha) * unit;
}

PolyMap expand(const std::vector<MonomialUnit>& F) {
  PolyMap out;
  for (const auto& f : F) out.push_back(f.expand());
  return out;
}

cd epsilon_entry(const MultiPoly& Fj, const MultiPoly& tau_ij, const Eigen::VectorXcd& z, double tol) {
  if (Fj.is_zero()) return 0;
  const cd denom = Fj(z);
  if (std::abs(denom) <= 64 * std::numeric_limits<double>::epsilon() * magnitude(Fj, z) || denom == cd{0})
    throw Error(ErrorCode::OnZeroDivisor, "F_j vanishes at the evaluation point");
  const auto p = Fj.along_ray(z), q = derivative(tau_ij.along_ray(z));
  if (q.empty()) return 0;
  auto integrand = [&](double t) { return horner(p, t) * horner(q, t); };
  double err = 0;
  cd value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 15, tol, &err);
  return value / denom;
}

Eigen::MatrixXcd epsilon_matrix(const PolyMap& F, const MatrixField& tau, const Eigen::VectorXcd& z, double tol) {
  const auto g = static_cast<Eigen::Index>(F.size());
  Eigen::MatrixXcd eps(g, g);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j)
      eps(i, j) = tau[i][j] ? epsilon_entry(F[j], *tau[i][j], z, tol)
                            : cd(std::numeric_limits<double>::quiet_NaN(), 0);
  return eps;
}

MultiPoly epsilon_series(const MultiIndex& alpha, const MultiPoly& tau_ij, const MultiPoly& unit) {
  const int d = tau_ij.dimension(), w = weight(alpha);
  MultiPoly out(d);
  for (int k = 0; k < d; ++k) {
    MultiPoly c = unit * tau_ij.derivative(k);
    for (const auto& [beta, cb] : c.terms()) {
      MultiIndex e = beta;
      ++e[k];
      out.add_term(e, cb / double(w + weight(beta) + 1));
    }
  }
  return out;
}

cd epsilon_series_value(const MonomialUnit& Fj, const MultiPoly& tau_ij, const Eigen::VectorXcd& z) {
  if (Fj.identically_zero) return 0;
  return epsilon_series(Fj.alpha, tau_ij, Fj.unit)(z) / Fj.unit(z);
}

SplittingReport verify_splitting(const std::vector<MonomialUnit>& Fm, const PolyMap& G,
                                 const std::vector<std::vector<MultiPoly>>& tau,
                                 const std::vector<Eigen::VectorXcd>& samples, double hypothesis_tol,
                                 double splitting_tol) {
  const std::size_t g = Fm.size();
  if (G.size() != g || tau.size() != g || samples.empty())
    throw Error(ErrorCode::PreconditionViolated, "inconsistent splitting data");
  for (const auto& f : Fm)
    if (!f.identically_zero && f.unit(Eigen::VectorXcd::Zero(f.unit.dimension())) == cd{0})
      throw Error(ErrorCode::PreconditionViolated, "unit vanishes at the origin");
  const PolyMap F = expand(Fm);
  const int d = F[0].dimension();
  MatrixField field(g, std::vector<std::optional<MultiPoly>>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) field[i][j] = tau[i][j];

  SplittingReport rep;
  const double h = 1e-5;
  const Eigen::VectorXcd origin = Eigen::VectorXcd::Zero(d);
  for (std::size_t i = 0; i < g; ++i) {
    cd v = G[i](origin);
    for (std::size_t j = 0; j < g; ++j) v -= tau[i][j](origin) * F[j](origin);
    rep.hypothesis_residual = std::max(rep.hypothesis_residual, std::abs(v));
  }

  for (const auto& z : samples) {
    // dG = tau dF by central differences along each coordinate.
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXcd zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      for (std::size_t i = 0; i < g; ++i) {
        cd lhs = (G[i](zp) - G[i](zm)) / (2 * h), rhs = 0;
        double scale = std::max(1.0, std::abs(lhs));
        for (std::size_t j = 0; j < g; ++j) rhs += tau[i][j](z) * (F[j](zp) - F[j](zm)) / (2 * h);
        rep.hypothesis_residual = std::max(rep.hypothesis_residual, std::abs(lhs - rhs) / scale);
      }
    }
    if (rep.hypothesis_residual > hypothesis_tol) break;

    Eigen::MatrixXcd eps = epsilon_matrix(F, field, z);
    Eigen::VectorXcd Fz(g), Gz(g);
    Eigen::MatrixXcd S(g, g);
    for (std::size_t i = 0; i < g; ++i) {
      Fz[i] = F[i](z);
      Gz[i] = G[i](z);
      for (std::size_t j = 0; j < g; ++j) {
        S(i, j) = tau[i][j](z) - eps(i, j);
        double diff = std::abs(eps(i, j) - epsilon_series_value(Fm[j], tau[i][j], z));
        rep.series_agreement = std::max(rep.series_agreement, diff / std::max(1.0, std::abs(eps(i, j))));
      }
    }
    double scale = std::max(1.0, Gz.cwiseAbs().maxCoeff());
    rep.splitting_residual = std::max(rep.splitting_residual, (Gz - S * Fz).cwiseAbs().maxCoeff() / scale);
    ++rep.samples;
  }
  if (rep.hypothesis_residual > hypothesis_tol)
    throw Error(ErrorCode::HypothesisViolated, "dG differs from tau dF by " + std::to_string(rep.hypothesis_residual));

  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      cd e0 = Fm[j].identically_zero
                  ? cd{0}
                  : epsilon_series(Fm[j].alpha, tau[i][j], Fm[j].unit)(origin) / Fm[j].unit(origin);
      rep.origin_residual = std::max(rep.origin_residual, std::abs(e0));
    }
  if (rep.splitting_residual > splitting_tol || rep.origin_residual > splitting_tol)
    throw Error(ErrorCode::SplittingResidualExceeded,
                "G - S F residual " + std::to_string(rep.splitting_residual) + ", S(0) - tau(0) " +
                    std::to_string(rep.origin_residual));
  return rep;
}

ApproachPath ApproachPath::line(const Eigen::VectorXcd& direction, std::string name) {
  ApproachPath p{std::move(name), {}};
  for (Eigen::Index k = 0; k < direction.size(); ++k) p.coords.push_back({cd{0}, direction[k]});
  return p;
}

Eigen::VectorXcd ApproachPath::operator()(double t) const {
  Eigen::VectorXcd z(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) z[k] = horner(coords[k], t);
  return z;
}

IndeterminacyVerdict detect_indeterminacy(const PolyMap& F, const MatrixField& tau,
                                          const std::vector<ApproachPath>& paths, double tol, double t0,
                                          double t_min) {
  IndeterminacyVerdict v;
  const std::size_t g = F.size();
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (!tau[i][j] || F[j].is_zero()) continue;
      std::vector<PathLimit> here;
      for (const auto& path : paths) {
        PathLimit L{path.name, int(i), int(j), false, false, 0, {}};
        for (double t = t0; t >= t_min; t /= 2) {
          try {
            L.trace.emplace_back(t, epsilon_entry(F[j], *tau[i][j], path(t)));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::OnZeroDivisor) throw;
          }
        }
        // Linear extrapolation to t = 0 from consecutive halvings.
        const auto& tr = L.trace;
        L.on_divisor = tr.empty();
        if (tr.size() >= 3) {
          std::size_t n = tr.size();
          cd a = 2.0 * tr[n - 1].second - tr[n - 2].second, b = 2.0 * tr[n - 2].second - tr[n - 3].second;
          L.limit = a;
          L.converged = std::isfinite(std::abs(a)) && std::abs(a - b) < tol * std::max(1.0, std::abs(a));
        }
        here.push_back(L);
      }
      std::erase_if(here, [&](const PathLimit& L) {
        if (L.on_divisor) v.limits.push_back(L);
        return L.on_divisor;
      });
      const std::string entry = "eps_" + std::to_string(i + 1) + std::to_string(j + 1);
      const PathLimit* ref = nullptr;
      for (const auto& L : here) {
        if (!L.converged) {
          v.indeterminate = true;
          if (v.reason.empty()) v.reason = entry + " has no limit along " + L.path;
          continue;
        }
        if (!ref) ref = &L;
        else if (std::abs(L.limit - ref->limit) > tol) {
          v.indeterminate = true;
          if (v.reason.empty()) v.reason = entry + " limits differ along " + ref->path + " and " + L.path;
        }
      }
      v.limits.insert(v.limits.end(), here.begin(), here.end());
    }
  return v;
}

namespace {

MultiPoly poly_from_json(const nlohmann::json& terms, int d) {
  MultiPoly p(d);
  for (const auto& t : terms) {
    MultiIndex e = t.at("e").get<MultiIndex>();
    auto c = t.at("c").get<std::vector<double>>();
    if (static_cast<int>(e.size()) != d || c.size() != 2)
      throw Error(ErrorCode::ParseError, "malformed polynomial term");
    p.add_term(e, cd(c[0], c[1]));
  }
  return p;
}

}  // namespace

IndeterminacyFixture load_indeterminacy_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  IndeterminacyFixture fx;
  const int d = j.at("variables").get<int>();
  for (const auto& f : j.at("F")) fx.F.push_back(poly_from_json(f, d));
  const std::size_t g = fx.F.size();
  fx.tau.assign(g, std::vector<std::optional<MultiPoly>>(g));
  for (const auto& e : j.at("tau")) fx.tau.at(e.at("i").get<std::size_t>()).at(e.at("j").get<std::size_t>()) =
      poly_from_json(e.at("poly"), d);
  for (const auto& p : j.at("paths")) {
    ApproachPath ap{p.at("name").get<std::string>(), {}};
    for (const auto& coord : p.at("coords")) {
      std::vector<cd> c;
      for (const auto& t : coord) {
        auto v = t.get<std::vector<double>>();
        std::size_t pw = static_cast<std::size_t>(v.at(0));
        if (c.size() <= pw) c.resize(pw + 1, cd{0});
        c[pw] += cd(v.at(1), v.at(2));
      }
      ap.coords.push_back(c);
    }
    if (static_cast<int>(ap.coords.size()) != d) throw Error(ErrorCode::ParseError, "path dimension");
    fx.paths.push_back(ap);
  }
  return fx;
}

RandomSplitting random_splitting_instance(std::uint64_t seed, int degree, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1), disk(0, 1);
  std::uniform_int_distribution<int> dim(1, 3), coin(0, 7);
  auto cx = [&] { return cd(u(rng), u(rng)); };

  RandomSplitting out;
  const int g = dim(rng), d = dim(rng);
  for (int j = 0; j < g; ++j) {
    MonomialUnit m;
    m.unit = MultiPoly(d);
    if (j > 0 && coin(rng) == 0) {
      m.identically_zero = true;
      out.F.push_back(m);
      continue;
    }
    m.alpha.assign(d, 0);
    const int w = std::uniform_int_distribution<int>(1, std::min(3, degree))(rng);
    for (int s = 0; s < w; ++s) ++m.alpha[std::uniform_int_distribution<int>(0, d - 1)(rng)];
    const int du = degree - w;
    // Random terms of the unit up to degree du, constant term at least 1/2 in size.
    for (int s = 0; s < 6 * d; ++s) {
      MultiIndex e(d, 0);
      const int dd = std::uniform_int_distribution<int>(1, std::max(du, 1))(rng);
      if (du == 0) break;
      for (int r = 0; r < dd; ++r) ++e[std::uniform_int_distribution<int>(0, d - 1)(rng)];
      m.unit.add_term(e, 0.3 * cx());
    }
    cd c0 = cx();
    while (std::abs(c0) < 0.5) c0 = cx();
    m.unit.add_term(MultiIndex(d, 0), c0);
    out.F.push_back(m);
  }

  const PolyMap F = expand(out.F);
  // Phi_i(w) = sum_j a_ij w_j + 1/2 sum_jl B^i_jl w_j w_l with B^i symmetric.
  out.tau.assign(g, std::vector<MultiPoly>(g, MultiPoly(d)));
  out.G.assign(g, MultiPoly(d));
  for (int i = 0; i < g; ++i) {
    Eigen::MatrixXcd B(g, g);
    for (int j = 0; j < g; ++j)
      for (int l = j; l < g; ++l) B(j, l) = B(l, j) = cx();
    for (int j = 0; j < g; ++j) {
      cd a = cx();
      if (j == i) a += cd(0, 1);
      out.tau[i][j] = MultiPoly::constant(d, a);
      out.G[i] += a * F[j];
      for (int l = 0; l < g; ++l) {
        out.tau[i][j] += B(j, l) * F[l];
        out.G[i] += (0.5 * B(j, l)) * (F[j] * F[l]);
      }
    }
  }

  while (static_cast<int>(out.samples.size()) < samples) {
    Eigen::VectorXcd z(d);
    for (int k = 0; k < d; ++k) z[k] = std::polar(0.3 * std::sqrt(disk(rng)), 6.283185307179586 * disk(rng));
    bool ok = true;
    for (const auto& f : out.F)
      if (!f.identically_zero && (std::abs(f.unit(z)) < 0.1 || std::abs(f.expand()(z)) < 1e-12)) ok = false;
    if (ok) out.samples.push_back(z);
  }
  return out;
}

}  // namespace tempered
