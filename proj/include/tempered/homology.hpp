#pragma once

#include <vector>

#include <Eigen/Core>

namespace tempered {

using Permutation = std::vector<int>;  // p[s] = sheet reached from sheet s
using IntMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

/// One traversal of the lasso around puncture `puncture`, counterclockwise for +1.
struct LassoStep {
  int puncture = 0;
  int direction = 1;
  friend bool operator==(const LassoStep&, const LassoStep&) = default;
};
using Word = std::vector<LassoStep>;

/// A closed loop on the curve: a lasso word based at the base point, starting on a sheet.
struct LassoLoop {
  Word word;
  int start_sheet = 0;
};

/// Follow a then b.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
int apply(const LassoStep& step, int sheet, const std::vector<Permutation>& monodromy);
int end_sheet(const LassoLoop& loop, const std::vector<Permutation>& monodromy);

/// Free and cyclic reduction (cyclic reduction moves the start sheet along).
LassoLoop reduce(LassoLoop loop, const std::vector<Permutation>& monodromy);

/// Schreier generators of the loops that close on the surface: one per non-tree edge of
/// a breadth-first spanning tree of the sheet graph. Trivial words are dropped.
std::vector<LassoLoop> schreier_loops(const std::vector<Permutation>& monodromy, int sheets);

/// Intersection numbers of closed lasso loops. All tails leave the base point in the
/// distinct directions tail_angles; loops are pushed off each other as nested lassos,
/// so every crossing happens in a small disk around the base point, where it is a
/// crossing of two chords on the same sheet.
IntMatrix intersection_matrix(const std::vector<LassoLoop>& loops, const std::vector<Permutation>& monodromy,
                              const std::vector<double>& tail_angles);

struct SymplecticBasis {
  IntMatrix transform;  // 2g x M: rows a_1..a_g, b_1..b_g as combinations of the inputs
  int genus = 0;
};

/// Integer change of basis bringing an alternating form to the standard symplectic form
/// on a complement of its radical. Throws RankDeficientHomology if an invariant factor
/// differs from 1.
SymplecticBasis symplectic_reduction(const IntMatrix& form);

}  // namespace tempered
