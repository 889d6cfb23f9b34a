#include "tempered/engine.hpp"

#include <algorithm>

namespace tempered::engine {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr long double kWg[4] = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                                0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class T>
T min_separation(const std::vector<Cx<T>>& v, std::size_t s) {
  T m = std::numeric_limits<T>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != s) m = std::min(m, std::abs(v[k] - v[s]));
  return m;
}

template <class T>
Segment<T> subsegment(const Segment<T>& seg, T t0, T t1) {
  if (!seg.arc) return Segment<T>::line(seg.point(t0), seg.point(t1));
  return Segment<T>::circle_arc(seg.a, seg.point(t0), seg.sweep * (t1 - t0));
}

}  // namespace

template <class T>
CurveModel<T>::CurveModel(BivariatePoly<T> F, std::vector<Exponent> differentials)
    : F_(std::move(F)), diffs_(std::move(differentials)), eps_(std::numeric_limits<T>::epsilon() * 64) {}

template <class T>
std::vector<Cx<T>> CurveModel<T>::sorted_roots(Cx<T> x1) const {
  auto roots = poly_roots(F_.in_x2(x1));
  for (auto& r : roots) newton(F_.in_x2(x1), r, 4);
  std::sort(roots.begin(), roots.end(), [](const Cx<T>& p, const Cx<T>& q) {
    double pr = double(p.real()), qr = double(q.real());
    if (pr != qr) return pr < qr;
    return double(p.imag()) < double(q.imag());
  });
  return roots;
}

template <class T>
bool CurveModel<T>::newton(const UniPoly<T>& c, Cx<T>& r, int max_iter, Cx<T>* first_step) const {
  for (int it = 0; it < max_iter; ++it) {
    Cx<T> v, dv;
    horner2(c, r, v, dv);
    if (dv == Cx<T>{0}) return false;
    Cx<T> step = v / dv;
    if (it == 0 && first_step) *first_step = step;
    r -= step;
    if (!std::isfinite(double(std::abs(r)))) return false;
    if (std::abs(step) <= eps_ * std::abs(r)) return true;
  }
  return false;
}

template <class T>
Cx<T> CurveModel<T>::slope(Cx<T> x1, Cx<T> x1dot, Cx<T> x2) const {
  Cx<T> f, f1, f2;
  F_.eval(x1, x2, f, f1, f2);
  return -f1 * x1dot / f2;
}

template <class T>
Track<T> CurveModel<T>::track(const Segment<T>& seg, const std::vector<Cx<T>>& start) const {
  const std::size_t n = start.size();
  Track<T> tr;
  std::vector<Cx<T>> r = start, dr(n), pred(n), next(n);
  Cx<T> x1 = seg.point(0), xd = seg.deriv(0);
  for (std::size_t s = 0; s < n; ++s) dr[s] = slope(x1, xd, r[s]);
  tr.t.push_back(0);
  tr.r.push_back(r);
  tr.dr.push_back(dr);

  T t = 0, h = T(1) / 16;
  const T h_max = T(1) / 8, h_min = T(1e-13);
  while (t < 1) {
    T tn = std::min<T>(T(1), t + h);
    if (T(1) - tn < T(1e-12)) tn = 1;
    T step = tn - t;
    Cx<T> x1n = seg.point(tn), xdn = seg.deriv(tn);
    // Heun predictor
    for (std::size_t s = 0; s < n; ++s) {
      Cx<T> e = r[s] + step * dr[s];
      pred[s] = r[s] + step / 2 * (dr[s] + slope(x1n, xdn, e));
    }
    UniPoly<T> c = F_.in_x2(x1n);
    bool ok = true;
    for (std::size_t s = 0; s < n && ok; ++s) {
      next[s] = pred[s];
      if (!newton(c, next[s], 8)) ok = false;
      else if (std::abs(next[s] - pred[s]) > T(0.2) * min_separation(pred, s)) ok = false;
      else if (std::abs(next[s] - r[s]) > T(0.3) * std::abs(r[s])) ok = false;
    }
    if (!ok) {
      h /= 2;
      if (h < h_min) throw Error(ErrorCode::SheetCollision, "step size underflow while tracking sheets");
      continue;
    }
    t = tn;
    r = next;
    for (std::size_t s = 0; s < n; ++s) dr[s] = slope(x1n, xdn, r[s]);
    tr.t.push_back(t);
    tr.r.push_back(r);
    tr.dr.push_back(dr);
    h = std::min(h_max, h * T(1.5));
  }
  return tr;
}

template <class T>
std::vector<Cx<T>> CurveModel<T>::sample(const Segment<T>& seg, const Track<T>& tr, std::size_t i, T t) const {
  const std::size_t n = tr.r[i].size();
  T t0 = tr.t[i], t1 = tr.t[i + 1], dt = t1 - t0, s = (t - t0) / dt;
  T h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s, h01 = -2 * s * s * s + 3 * s * s,
    h11 = s * s * s - s * s;
  std::vector<Cx<T>> guess(n), out(n);
  for (std::size_t k = 0; k < n; ++k)
    guess[k] = h00 * tr.r[i][k] + h10 * dt * tr.dr[i][k] + h01 * tr.r[i + 1][k] + h11 * dt * tr.dr[i + 1][k];
  UniPoly<T> c = F_.in_x2(seg.point(t));
  bool ok = true;
  for (std::size_t k = 0; k < n && ok; ++k) {
    out[k] = guess[k];
    if (!newton(c, out[k], 6) || std::abs(out[k] - guess[k]) > T(0.2) * min_separation(guess, k)) ok = false;
  }
  if (ok) return out;
  return track(subsegment(seg, t0, t), tr.r[i]).r.back();
}

template <class T>
void CurveModel<T>::integrand(const Segment<T>& seg, T t, const std::vector<Cx<T>>& roots, Cx<T> x1_start,
                              Cx<T>* out) const {
  const std::size_t g = diffs_.size(), stride = g + 2;
  Cx<T> x1 = seg.point(t), xd = seg.deriv(t);
  Cx<T> logrel = std::log(x1 / x1_start);
  T log_abs_x1 = std::log(std::abs(x1));
  T darg_x1 = (xd / x1).imag();
  for (std::size_t s = 0; s < roots.size(); ++s) {
    Cx<T> x2 = roots[s], f, f1, f2;
    F_.eval(x1, x2, f, f1, f2);
    Cx<T> x2d = -f1 * xd / f2;
    Cx<T> dlog2 = x2d / x2;
    Cx<T>* o = out + s * stride;
    for (std::size_t k = 0; k < g; ++k)
      o[k] = std::pow(x1, diffs_[k][0] - 1) * std::pow(x2, diffs_[k][1] - 1) * xd / f2;
    o[g] = Cx<T>(log_abs_x1 * dlog2.imag() - std::log(std::abs(x2)) * darg_x1, 0);
    o[g + 1] = logrel * dlog2;
  }
}

template <class T>
std::vector<PathIntegrals<T>> CurveModel<T>::integrate(const Segment<T>& seg, const Track<T>& tr, T tol,
                                                       QuadratureStats* stats) const {
  const std::size_t n = tr.r[0].size(), g = diffs_.size(), stride = g + 2, width = n * stride;
  std::vector<Cx<T>> total(width, Cx<T>{0}), fx(width), kron(width), gauss(width);
  const Cx<T> x1_start = seg.point(0);

  for (std::size_t i = 0; i + 1 < tr.t.size(); ++i) {
    std::vector<std::pair<T, T>> todo{{tr.t[i], tr.t[i + 1]}};
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      T half = (b - a) / 2, mid = (a + b) / 2;
      std::fill(kron.begin(), kron.end(), Cx<T>{0});
      std::fill(gauss.begin(), gauss.end(), Cx<T>{0});
      for (int j = 0; j < 15; ++j) {
        int idx = j < 7 ? j : (j == 7 ? 7 : 14 - j);
        T x = j < 7 ? -T(kXgk[j]) : (j == 7 ? T(0) : T(kXgk[14 - j]));
        T tt = mid + half * x;
        std::vector<Cx<T>> roots;
        if (tt == tr.t[i]) roots = tr.r[i];
        else if (tt == tr.t[i + 1]) roots = tr.r[i + 1];
        else roots = sample(seg, tr, i, tt);
        integrand(seg, tt, roots, x1_start, fx.data());
        T wk = T(kWgk[idx]);
        T wg = (idx % 2 == 1) ? T(kWg[idx / 2]) : T(0);
        for (std::size_t c = 0; c < width; ++c) {
          kron[c] += wk * fx[c];
          if (wg != T(0)) gauss[c] += wg * fx[c];
        }
      }
      T err = 0, mag = 0;
      for (std::size_t c = 0; c < width; ++c) {
        err = std::max(err, std::abs(kron[c] - gauss[c]) * half);
        mag = std::max(mag, std::abs(kron[c]) * half);
      }
      if (stats) stats->evaluations += 15;
      if (err <= tol * (b - a) || err <= std::numeric_limits<T>::epsilon() * 16 * mag) {
        for (std::size_t c = 0; c < width; ++c) total[c] += kron[c] * half;
        if (stats) ++stats->intervals;
        continue;
      }
      if (b - a < T(1e-10))
        throw Error(ErrorCode::QuadratureNonconvergence, "interval bisection limit reached");
      todo.push_back({a, mid});
      todo.push_back({mid, b});
    }
  }

  std::vector<PathIntegrals<T>> out(n);
  Cx<T> D1 = std::log(seg.end() / seg.start());
  for (std::size_t s = 0; s < n; ++s) {
    auto& p = out[s];
    p.omega.assign(total.begin() + s * stride, total.begin() + s * stride + g);
    p.eta = total[s * stride + g].real();
    p.J = total[s * stride + g + 1];
    p.D1 = D1;
    for (std::size_t i = 0; i + 1 < tr.t.size(); ++i) {
      Cx<T> step = std::log(tr.r[i + 1][s] / tr.r[i][s]);
      if (std::abs(step.imag()) > std::numbers::pi_v<T> / 2)
        throw Error(ErrorCode::ArgTrackingJump, "argument increment exceeded pi/2");
      p.D2 += step;
    }
  }
  return out;
}

template <class T>
BivariatePoly<T> bivariate_from(const LaurentPolynomial& p, Exponent shift) {
  int d1 = 0, d2 = 0;
  for (const auto& [e, c] : p.terms()) {
    d1 = std::max(d1, e[0] + shift[0]);
    d2 = std::max(d2, e[1] + shift[1]);
  }
  BivariatePoly<T> out;
  out.c.assign(d2 + 1, UniPoly<T>(d1 + 1, Cx<T>{0}));
  for (const auto& [e, c] : p.terms()) out.c[e[1] + shift[1]][e[0] + shift[0]] += coefficient_as<T>(c);
  return out;
}

template class CurveModel<double>;
template class CurveModel<long double>;
template BivariatePoly<double> bivariate_from<double>(const LaurentPolynomial&, Exponent);
template BivariatePoly<long double> bivariate_from<long double>(const LaurentPolynomial&, Exponent);

}  // namespace tempered::engine
