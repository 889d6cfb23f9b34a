#include "tempered/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tempered/error.hpp"

namespace tempered {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cd kTwoPiI{0, 2 * kPi};

cd horner(const std::vector<cd>& c, cd z) {
  cd v{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

double abs_sum(const std::vector<cd>& c, double r, std::size_t from = 0) {
  double s = 0, p = std::pow(r, double(from));
  for (std::size_t j = from; j < c.size(); ++j, p *= r) s += std::abs(c[j]) * p;
  return s;
}

// Radii strictly inside (0, r), geometric, the smallest at most lo.
std::vector<double> inner_radii(double r, int count, double lo) {
  lo = std::min(lo, r / 16);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = r * std::pow(lo / r, (i + 1.0) / count);
  return out;
}

// Angles offset by half a step so that none lies on the cut.
double angle(int j, int count) { return -kPi + 2 * kPi * (j + 0.5) / count; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
}

}  // namespace

int Series::order() const {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != cd{0}) return static_cast<int>(j);
  return -1;
}

cd Series::operator()(cd z) const { return horner(c, z); }

cd Series::derivative(cd z) const {
  cd v{0};
  for (int j = degree(); j >= 1; --j) v = v * z + double(j) * c[j];
  return v;
}

double Series::tail(double r) const {
  if (tail_c == 0) return 0;
  const double qr = tail_q * r;
  if (qr >= 1) throw Error(ErrorCode::SeriesTailTooLarge, "tail bound diverges on the requested disk");
  return tail_c * std::pow(qr, degree() + 1) / (1 - qr);
}

double Series::majorant(double r, int from) const { return abs_sum(c, r, std::max(from, 0)) + tail(r); }

void DiskModel::validate() const {
  require(n >= 0, "monodromy parameter must be nonnegative");
  require(!f.is_zero() && f.order() >= 0, "f must not vanish identically");
  require(radius > 0 && radius < 1, "disk radius must lie in (0, 1)");
  require(n == 0 || Psi_alpha == cd{0}, "the alpha limit vanishes when n > 0");
}

cd ell(cd z) { return std::log(z) / kTwoPiI; }

RTilde::RTilde(const DiskModel& model) : m_(model) {
  m_.validate();
  k_ = m_.f.order();
  const auto& f = m_.f.c;
  for (std::size_t m = k_; m < f.size(); ++m) {
    U_.push_back(f[m] / double(m + 1));
    Ut_.push_back(f[m] / double((m + 1) * (m + 1)));
  }
  const auto& eta = m_.eta.c;
  std::vector<cd> prod(eta.empty() ? 0 : eta.size() + f.size() - 1, cd{0});
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) prod[i + j] += eta[i] * f[j];
  for (std::size_t m = k_; m < prod.size(); ++m) V_.push_back(prod[m] / double(m + 1));
  if (V_.empty()) V_.push_back(cd{0});
}

cd RTilde::U(cd z) const { return horner(U_, z); }
cd RTilde::U_tilde(cd z) const { return horner(Ut_, z); }
cd RTilde::H0(cd z) const { return horner(V_, z) / U(z); }

cd RTilde::H(cd z) const { return (horner(V_, z) - double(m_.n) / kTwoPiI * U_tilde(z)) / U(z); }

cd RTilde::F(cd z) const {
  cd lead = std::pow(z, k_ + 1) * U(z);
  return m_.n == 0 ? m_.Psi_alpha + lead : lead;
}

cd RTilde::G(cd z) const {
  cd zk = std::pow(z, k_ + 1);
  if (m_.n == 0) return m_.Psi + zk * horner(V_, z);
  const double n = m_.n;
  return m_.Psi + zk * (horner(V_, z) - n / kTwoPiI * U_tilde(z) + n * ell(z) * U(z));
}

cd RTilde::beta_coefficient_tilde(cd z) const { return G(z).imag() - double(m_.n) * ell(z) * F(z).imag(); }

double RTilde::sup_U(double r) const {
  return abs_sum(U_, r) + m_.f.tail(r) / std::pow(r, k_) / (k_ + 1);
}

double RTilde::inf_U(double r) const {
  double rest = abs_sum(U_, r, 1) + m_.f.tail(r) / std::pow(r, k_) / (k_ + 1);
  double v = std::abs(U_[0]) - rest;
  if (!(v > 0)) throw Error(ErrorCode::SeriesTailTooLarge, "U is not provably a unit on the disk");
  return v;
}

double RTilde::sup_V(double r) const {
  // The exact part comes from the truncations; the rest is majorized by
  // tail(eta) * |f| + |eta| * tail(f).
  double f_all = m_.f.majorant(r), eta_trunc = abs_sum(m_.eta.c, r);
  double err = m_.eta.tail(r) * f_all + eta_trunc * m_.f.tail(r);
  return abs_sum(V_, r) + err / std::pow(r, k_) / (k_ + 1);
}

double RTilde::sup_H(double r) const {
  double ut = abs_sum(Ut_, r) + m_.f.tail(r) / std::pow(r, k_) / ((k_ + 1) * (k_ + 1));
  return (sup_V(r) + m_.n / (2 * kPi) * ut) / inf_U(r);
}

double RTilde::sup_H0_minus_tau0(double r) const {
  const cd tau0 = m_.eta.c.empty() ? cd{0} : m_.eta.c[0];
  std::vector<cd> w = V_;
  w.resize(std::max(w.size(), U_.size()), cd{0});
  for (std::size_t j = 0; j < U_.size(); ++j) w[j] -= tau0 * U_[j];
  double f_all = m_.f.majorant(r), eta_trunc = abs_sum(m_.eta.c, r) - std::abs(tau0);
  double err = m_.eta.tail(r) * f_all + eta_trunc * m_.f.tail(r);
  return (abs_sum(w, r) + err / std::pow(r, k_) / (k_ + 1)) / inf_U(r);
}

Witness verify_nonvanishing_psi_nonzero(const DiskModel& model, const SweepOptions& sweep) {
  RTilde R(model);
  require(model.n > 0, "this case needs n > 0");
  const double psi = model.Psi.imag();
  require(psi != 0, "Im Psi must be nonzero");
  const int k = R.k();

  // |Im G - psi| <= r^{k+1} sup|U| (sup|H| + n (|log r| + pi) / 2 pi); shrink until it is
  // below |psi| / 2. Below exp(-1/(k+1)) the bound is increasing in r.
  double r = std::min(model.radius, std::exp(-1.0 / (k + 1)));
  for (int it = 0;; ++it) {
    if (it > 1000) throw Error(ErrorCode::CounterexampleFound, "no radius separates the constant term");
    try {
      double bound = std::pow(r, k + 1) * R.sup_U(r) *
                     (R.sup_H(r) + model.n * (std::abs(std::log(r)) + kPi) / (2 * kPi));
      if (bound < std::abs(psi) / 2) break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SeriesTailTooLarge) throw;
    }
    r /= 2;
  }

  Witness w{r, std::numeric_limits<double>::infinity(), 0};
  for (double rho : inner_radii(r, sweep.radii, sweep.min_radius))
    for (int j = 0; j < sweep.angles; ++j) {
      cd z = std::polar(rho, angle(j, sweep.angles));
      double v = std::hypot(R.F(z).imag(), R.G(z).imag());
      ++w.samples;
      if (!(v > 0)) throw Error(ErrorCode::CounterexampleFound, "Im R~ vanishes at a sampled point");
      w.floor = std::min(w.floor, v);
    }
  return w;
}

Witness verify_nonvanishing_psi_zero(const DiskModel& model, const SweepOptions& sweep) {
  RTilde R(model);
  require(model.n > 0, "this case needs n > 0");
  require(model.Psi.imag() == 0, "Im Psi must vanish");
  const double n = model.n;

  // The admissible radius min(r, exp(-4 pi B(r) / n)) is maximized over dyadic r.
  double best = 0;
  for (double r = model.radius; r > 1e-12; r /= 2) {
    try {
      best = std::max(best, std::min(r, std::exp(-4 * kPi * R.sup_H(r) / n)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SeriesTailTooLarge) throw;
    }
  }
  if (!(best > std::numeric_limits<double>::min()))
    throw Error(ErrorCode::SeriesTailTooLarge, "the admissible radius underflows");

  Witness w{best, std::numeric_limits<double>::infinity(), 0};
  const int k = R.k();
  for (double rho : inner_radii(best, sweep.radii, sweep.min_radius))
    for (int j = 0; j < sweep.angles; ++j) {
      cd z = std::polar(rho, angle(j, sweep.angles));
      cd F = std::pow(z, k + 1) * R.U(z);
      double logabs = std::log(rho);
      cd bracket = 1.0 - (2 * kPi / n) * (F * R.H(z)).imag() / (std::conj(F) * logabs);
      cd closed = -(n / (2 * kPi)) * logabs * std::conj(F) * bracket;
      cd coeff = R.beta_coefficient_tilde(z);
      ++w.samples;
      if (!(std::abs(bracket) > 0.5))
        throw Error(ErrorCode::CounterexampleFound, "bracket bound fails inside the admissible radius");
      if (!(std::abs(coeff) > 0) || std::abs(coeff - closed) > 1e-8 * std::abs(closed))
        throw Error(ErrorCode::CounterexampleFound, "beta coefficient disagrees with its factored form");
      w.floor = std::min(w.floor, std::abs(bracket) - 0.5);
    }
  return w;
}

Witness verify_n_zero_case(const DiskModel& model, const SweepOptions& sweep) {
  RTilde R(model);
  require(model.n == 0, "this case needs n = 0");
  require(!model.eta.c.empty() && model.eta.c[0].imag() > 0, "Im tau(0) must be positive");
  const int k = R.k();
  const double ia = model.Psi_alpha.imag(), ib = model.Psi.imag();

  if (ia != 0 || ib != 0) {
    // The larger imaginary constant dominates once r^{k+1} sup|U|, r^{k+1} sup|V| < half of it.
    const double c = std::max(std::abs(ia), std::abs(ib));
    double r = model.radius;
    for (int it = 0;; ++it) {
      if (it > 1000) throw Error(ErrorCode::CounterexampleFound, "no radius separates the constant term");
      try {
        double rk = std::pow(r, k + 1);
        double drift = std::abs(ia) >= std::abs(ib) ? rk * R.sup_U(r) : rk * R.sup_V(r);
        if (drift < c / 2) break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SeriesTailTooLarge) throw;
      }
      r /= 2;
    }
    Witness w{r, std::numeric_limits<double>::infinity(), 0};
    for (double rho : inner_radii(r, sweep.radii, sweep.min_radius))
      for (int j = 0; j < sweep.angles; ++j) {
        cd z = std::polar(rho, angle(j, sweep.angles));
        double v = std::hypot(R.F(z).imag(), R.G(z).imag());
        ++w.samples;
        if (!(v > 0)) throw Error(ErrorCode::CounterexampleFound, "Im R~ vanishes at a sampled point");
        w.floor = std::min(w.floor, v);
      }
    return w;
  }

  // Both constants real: at a common zero of Im F and Im G, Im G = Im(H_0) Re(F - Psi_alpha),
  // so it suffices that Im H_0 > 0 on the disk.
  const double im_tau0 = model.eta.c[0].imag();
  double r = model.radius;
  for (int it = 0;; ++it) {
    if (it > 1000) throw Error(ErrorCode::CounterexampleFound, "Im H_0 is not provably positive");
    try {
      if (R.sup_H0_minus_tau0(r) < im_tau0) break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SeriesTailTooLarge) throw;
    }
    r /= 2;
  }

  Witness w{r, std::numeric_limits<double>::infinity(), 0};
  const int N = sweep.angles;
  for (double rho : inner_radii(r, sweep.radii, sweep.min_radius)) {
    auto imF = [&](double th) { return R.F(std::polar(rho, th)).imag(); };
    std::vector<double> v(N);
    for (int j = 0; j < N; ++j) v[j] = imF(angle(j, N));
    for (int j = 0; j < N; ++j) {
      double lo = angle(j, N), hi = lo + 2 * kPi / N;
      double vl = v[j], vh = v[(j + 1) % N];
      ++w.samples;
      if ((vl > 0) == (vh > 0) && vl != 0) continue;
      for (int b = 0; b < 80; ++b) {
        double mid = (lo + hi) / 2, vm = imF(mid);
        if ((vm > 0) == (vl > 0) && vm != 0) lo = mid, vl = vm;
        else hi = mid;
      }
      cd z = std::polar(rho, (lo + hi) / 2);
      double lead = std::abs(std::pow(z, k + 1) * R.U(z));
      double ratio = std::abs(R.G(z).imag()) / lead;
      if (!(ratio > 1e-12)) throw Error(ErrorCode::CounterexampleFound, "common zero of Im F and Im G");
      w.floor = std::min(w.floor, ratio);
    }
  }
  return w;
}

Witness verify_disk_model(const DiskModel& model, const SweepOptions& sweep) {
  if (model.n == 0) return verify_n_zero_case(model, sweep);
  if (model.Psi.imag() != 0) return verify_nonvanishing_psi_nonzero(model, sweep);
  return verify_nonvanishing_psi_zero(model, sweep);
}

double dz_consistency(const DiskModel& model, int samples, double h) {
  RTilde R(model);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    double rho = model.radius * (0.2 + 0.6 * (i + 0.5) / samples);
    double th = (-0.9 + 1.8 * std::fmod(0.618033988749895 * (i + 1), 1.0)) * kPi;
    cd z = std::polar(rho, th);
    cd dF = (R.F(z + h) - R.F(z - h)) / (2 * h);
    cd dG = (R.G(z + h) - R.G(z - h)) / (2 * h);
    cd f = model.f(z), omega_beta = model.eta(z) + double(model.n) * ell(z);
    double scale = std::max(1.0, std::abs(f) * std::max(1.0, std::abs(omega_beta)));
    worst = std::max({worst, std::abs(dF - f) / scale, std::abs(dG - f * omega_beta) / scale});
  }
  return worst;
}

namespace {

struct Unit {
  int order = -1;
  std::vector<double> u;

  explicit Unit(const std::vector<double>& p) {
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] != 0) {
        order = static_cast<int>(j);
        u.assign(p.begin() + j, p.end());
        break;
      }
  }
  bool zero() const { return order < 0; }
  double sup(double r) const {
    double s = 0, p = 1;
    for (double c : u) s += std::abs(c) * p, p *= r;
    return s;
  }
  double inf(double r) const { return 2 * std::abs(u[0]) - sup(r); }
};

double eval_poly(const std::vector<double>& p, double t) {
  double v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

Witness log_lemma_test(const std::vector<double>& A, const std::vector<double>& B, double eps, int samples) {
  require(eps > 0, "radius must be positive");
  Unit a(A), b(B);
  if (a.zero() && b.zero()) throw Error(ErrorCode::BothIdenticallyZero, "A and B vanish identically");

  // Radius condition per case; each is monotone in r so checking at r covers (0, r).
  auto ok = [&](double r) {
    if (b.zero()) return a.inf(r) > 0;
    if (a.zero()) return r <= 0.5 && b.inf(r) > 0;
    double ia = a.inf(r), ib = b.inf(r);
    if (ia <= 0 || ib <= 0 || r >= 1) return false;
    const int c = a.order - b.order;
    if (c > 0) return std::pow(r, c) * a.sup(r) / ib < -std::log(r);  // t^c u = log|t|
    if (c < 0) {                                                       // u = t^c log|t|
      if (r > std::exp(1.0 / c)) return false;
      return std::pow(r, -c) * -std::log(r) < ia / b.sup(r);
    }
    return -std::log(r) > a.sup(r) / ib;
  };
  double r = b.zero() ? eps : std::min(eps, a.zero() ? 0.5 : eps);
  for (int it = 0; !ok(r); ++it) {
    if (it > 1000) throw Error(ErrorCode::CounterexampleFound, "no zero-free radius found");
    r /= 2;
  }

  // Sign sweep on both sides, normalized by |t|^min(order).
  const int lowest = a.zero() ? b.order : b.zero() ? a.order : std::min(a.order, b.order);
  Witness w{r, std::numeric_limits<double>::infinity(), 0};
  for (int side : {-1, 1}) {
    double prev = 0;
    for (int i = 0; i < samples; ++i) {
      double t = side * r * std::pow(1e-12, (i + 0.5) / samples);
      double v = eval_poly(A, t) - eval_poly(B, t) * std::log(std::abs(t));
      ++w.samples;
      if (v == 0 || (i > 0 && (v > 0) != (prev > 0)))
        throw Error(ErrorCode::CounterexampleFound, "A - B log|t| changes sign below the radius");
      prev = v;
      w.floor = std::min(w.floor, std::abs(v) / std::pow(std::abs(t), lowest));
    }
  }
  return w;
}

Witness singular_bound_test(const SingularModel& model, double eps, const SweepOptions& sweep) {
  double amin = std::numeric_limits<double>::infinity();
  for (double a : model.a)
    if (a != 0) amin = std::min(amin, std::abs(a));
  require(std::isfinite(amin), "singularity class vanishes");
  require(model.harmonic_bound >= 0 && eps > 0, "bounds must be nonnegative");

  const double r = std::min(eps, std::exp(-(model.harmonic_bound + 1) / amin));
  Witness w{r, std::numeric_limits<double>::infinity(), 0};
  for (double rho : inner_radii(r, sweep.radii, sweep.min_radius))
    for (double a : model.a) {
      if (a == 0) continue;
      double v = std::abs(a * std::log(rho)) - model.harmonic_bound;
      ++w.samples;
      if (!(v > 0)) throw Error(ErrorCode::CounterexampleFound, "harmonic bound not beaten");
      w.floor = std::min(w.floor, v);
    }
  return w;
}

int HarnessReport::passed() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const HarnessCase& c) { return c.passed; }));
}

DiskModel random_disk_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1), pos(0.05, 1);
  std::uniform_int_distribution<int> nd(0, 5), deg(0, 8), coin(0, 1);
  auto cx = [&] { return cd(u(rng), u(rng)); };

  DiskModel m;
  m.n = nd(rng);
  const int df = deg(rng);
  const int k = std::uniform_int_distribution<int>(0, df)(rng);
  m.f.c.assign(df + 1, cd{0});
  for (int j = k; j <= df; ++j) m.f.c[j] = cx();
  while (std::abs(m.f.c[k]) < 0.05) m.f.c[k] = cx();
  m.eta.c.resize(deg(rng) + 1);
  for (auto& c : m.eta.c) c = cx();
  if (m.n == 0) {
    m.eta.c[0].imag(pos(rng));
    m.Psi_alpha = coin(rng) ? cd(u(rng), 0) : cx();
    m.Psi = coin(rng) ? cd(u(rng), 0) : cx();
  } else {
    m.Psi = coin(rng) ? cd(u(rng), 0) : cd(u(rng), (coin(rng) ? 1 : -1) * pos(rng));
  }
  m.radius = 0.5;
  return m;
}

HarnessReport run_asymptotics_harness(int models, std::uint64_t seed, const SweepOptions& sweep) {
  HarnessReport report;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < models; ++i) {
    HarnessCase hc;
    hc.index = i;
    DiskModel m = random_disk_model(rng());
    hc.kind = m.n == 0 ? "n-zero" : m.Psi.imag() != 0 ? "psi-nonzero" : "psi-zero";
    try {
      hc.witness = verify_disk_model(m, sweep);
      hc.passed = hc.witness.radius > 0 && hc.witness.floor > 0;
    } catch (const Error& e) {
      hc.error = e.what();
    }
    report.cases.push_back(hc);
  }
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> deg(0, 8), lead(0, 3);
  for (int i = 0; i < models; ++i) {
    HarnessCase hc;
    hc.index = i;
    hc.kind = "log-lemma";
    std::vector<double> A(deg(rng) + 1), B(deg(rng) + 1);
    for (auto& c : A) c = u(rng);
    for (auto& c : B) c = u(rng);
    for (int z = lead(rng); z > 0 && z < int(A.size()); --z) A[z - 1] = 0;
    for (int z = lead(rng); z > 0 && z < int(B.size()); --z) B[z - 1] = 0;
    try {
      hc.witness = log_lemma_test(A, B, 0.5);
      hc.passed = hc.witness.radius > 0 && hc.witness.floor > 0;
    } catch (const Error& e) {
      hc.error = e.what();
    }
    report.cases.push_back(hc);
  }
  return report;
}

}  // namespace tempered
