#include "tempered/homology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "tempered/error.hpp"

namespace tempered {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) c[s] = b[a[s]];
  return c;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t s = 0; s < p.size(); ++s) q[p[s]] = static_cast<int>(s);
  return q;
}

int apply(const LassoStep& step, int sheet, const std::vector<Permutation>& monodromy) {
  const Permutation& p = monodromy.at(step.puncture);
  if (step.direction > 0) return p[sheet];
  for (std::size_t s = 0; s < p.size(); ++s)
    if (p[s] == sheet) return static_cast<int>(s);
  throw Error(ErrorCode::PreconditionViolated, "invalid permutation");
}

int end_sheet(const LassoLoop& loop, const std::vector<Permutation>& monodromy) {
  int s = loop.start_sheet;
  for (const auto& st : loop.word) s = apply(st, s, monodromy);
  return s;
}

LassoLoop reduce(LassoLoop loop, const std::vector<Permutation>& monodromy) {
  Word out;
  for (const auto& st : loop.word) {
    if (!out.empty() && out.back().puncture == st.puncture && out.back().direction == -st.direction)
      out.pop_back();
    else
      out.push_back(st);
  }
  std::size_t b = 0, e = out.size();
  int start = loop.start_sheet;
  while (e - b >= 2 && out[b].puncture == out[e - 1].puncture && out[b].direction == -out[e - 1].direction) {
    start = apply(out[b], start, monodromy);
    ++b;
    --e;
  }
  return {Word(out.begin() + static_cast<std::ptrdiff_t>(b), out.begin() + static_cast<std::ptrdiff_t>(e)), start};
}

std::vector<LassoLoop> schreier_loops(const std::vector<Permutation>& monodromy, int sheets) {
  const int K = static_cast<int>(monodromy.size());
  std::vector<Word> path(sheets);
  std::vector<bool> seen(sheets, false);
  std::vector<std::vector<bool>> tree(sheets, std::vector<bool>(K, false));
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int j = 0; j < K; ++j) {
      int t = monodromy[j][s];
      if (seen[t]) continue;
      seen[t] = true;
      tree[s][j] = true;
      path[t] = path[s];
      path[t].push_back({j, 1});
      queue.push_back(t);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorCode::RankDeficientHomology, "monodromy is not transitive; the fiber is reducible");

  std::vector<LassoLoop> loops;
  for (int s = 0; s < sheets; ++s)
    for (int j = 0; j < K; ++j) {
      if (tree[s][j]) continue;
      int t = monodromy[j][s];
      LassoLoop l{path[s], 0};
      l.word.push_back({j, 1});
      for (auto it = path[t].rbegin(); it != path[t].rend(); ++it) l.word.push_back({it->puncture, -it->direction});
      l = reduce(l, monodromy);
      if (!l.word.empty()) loops.push_back(std::move(l));
    }
  return loops;
}

namespace {

struct Chord {
  double from, to;
  int sheet;
};

std::vector<Chord> chords_of(const LassoLoop& loop, const std::vector<Permutation>& monodromy,
                             const std::vector<double>& angle, double eps) {
  std::vector<Chord> out;
  const std::size_t L = loop.word.size();
  std::vector<int> sheet(L + 1);
  sheet[0] = loop.start_sheet;
  for (std::size_t i = 0; i < L; ++i) sheet[i + 1] = apply(loop.word[i], sheet[i], monodromy);
  if (sheet[L] != sheet[0]) throw Error(ErrorCode::PreconditionViolated, "loop does not close on the surface");
  for (std::size_t i = 0; i < L; ++i) {
    const auto& in = loop.word[i];
    const auto& out_step = loop.word[(i + 1) % L];
    // Counterclockwise lassos leave on the clockwise side of their tail and come back on
    // the counterclockwise side.
    double a = angle[in.puncture] + (in.direction > 0 ? eps : -eps);
    double b = angle[out_step.puncture] + (out_step.direction > 0 ? -eps : eps);
    out.push_back({a, b, sheet[i + 1]});
  }
  return out;
}

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

int crossing_sign(const Chord& c, const Chord& d) {
  double p1x = std::cos(c.from), p1y = std::sin(c.from), p2x = std::cos(c.to), p2y = std::sin(c.to);
  double q1x = std::cos(d.from), q1y = std::sin(d.from), q2x = std::cos(d.to), q2y = std::sin(d.to);
  double d1 = cross(p2x - p1x, p2y - p1y, q1x - p1x, q1y - p1y);
  double d2 = cross(p2x - p1x, p2y - p1y, q2x - p1x, q2y - p1y);
  double d3 = cross(q2x - q1x, q2y - q1y, p1x - q1x, p1y - q1y);
  double d4 = cross(q2x - q1x, q2y - q1y, p2x - q1x, p2y - q1y);
  if ((d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0)) return 0;
  return cross(p2x - p1x, p2y - p1y, q2x - q1x, q2y - q1y) > 0 ? 1 : -1;
}

}  // namespace

IntMatrix intersection_matrix(const std::vector<LassoLoop>& loops, const std::vector<Permutation>& monodromy,
                              const std::vector<double>& tail_angles) {
  std::vector<double> sorted = tail_angles;
  std::sort(sorted.begin(), sorted.end());
  double gap = 2 * std::numbers::pi;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double next = (i + 1 < sorted.size()) ? sorted[i + 1] : sorted[0] + 2 * std::numbers::pi;
    gap = std::min(gap, next - sorted[i]);
  }
  if (gap <= 1e-9) throw Error(ErrorCode::PreconditionViolated, "tails leave the base point in equal directions");
  const std::size_t M = loops.size();
  const double unit = 0.25 * gap / static_cast<double>(M + 1);
  std::vector<std::vector<Chord>> chords(M);
  for (std::size_t c = 0; c < M; ++c) chords[c] = chords_of(loops[c], monodromy, tail_angles, unit * double(c + 1));

  IntMatrix K = IntMatrix::Zero(M, M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i + 1; j < M; ++j) {
      long s = 0;
      for (const auto& a : chords[i])
        for (const auto& b : chords[j])
          if (a.sheet == b.sheet) s += crossing_sign(a, b);
      K(i, j) = s;
      K(j, i) = -s;
    }
  return K;
}

SymplecticBasis symplectic_reduction(const IntMatrix& form) {
  const long M = form.rows();
  IntMatrix K = form, T = IntMatrix::Identity(M, M);
  auto add = [&](long i, long j, long c) {  // row/col i += c * row/col j
    if (c == 0) return;
    T.row(i) += c * T.row(j);
    K.row(i) += c * K.row(j);
    K.col(i) += c * K.col(j);
  };
  auto swap = [&](long i, long j) {
    if (i == j) return;
    T.row(i).swap(T.row(j));
    K.row(i).swap(K.row(j));
    K.col(i).swap(K.col(j));
  };
  auto rounded_quotient = [](long x, long d) {
    double q = std::round(static_cast<double>(x) / static_cast<double>(d));
    return static_cast<long>(q);
  };

  long p = 0;
  while (p + 1 < M) {
    long bi = -1, bj = -1, best = 0;
    for (long i = p; i < M; ++i)
      for (long j = p; j < M; ++j)
        if (K(i, j) != 0 && (best == 0 || std::abs(K(i, j)) < best)) best = std::abs(K(i, j)), bi = i, bj = j;
    if (best == 0) break;
    swap(p, bi);
    if (bj == p) bj = bi;
    swap(p + 1, bj);
    long d = K(p, p + 1);
    bool clean = true;
    for (long k = p + 2; k < M; ++k) {
      add(k, p + 1, -rounded_quotient(K(p, k), d));
      add(k, p, rounded_quotient(K(p + 1, k), d));
      if (K(p, k) != 0 || K(p + 1, k) != 0) clean = false;
    }
    if (!clean) continue;
    if (d < 0) swap(p, p + 1);
    if (std::abs(d) != 1)
      throw Error(ErrorCode::RankDeficientHomology, "intersection form has invariant factor " + std::to_string(d));
    p += 2;
  }
  int g = static_cast<int>(p / 2);
  SymplecticBasis out;
  out.genus = g;
  out.transform.resize(2 * g, M);
  for (int i = 0; i < g; ++i) {
    out.transform.row(i) = T.row(2 * i);
    out.transform.row(g + i) = T.row(2 * i + 1);
  }
  return out;
}

}  // namespace tempered
