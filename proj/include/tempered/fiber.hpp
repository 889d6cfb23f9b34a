#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "tempered/engine.hpp"
#include "tempered/family.hpp"
#include "tempered/homology.hpp"
#include "tempered/laurent.hpp"

namespace tempered {

enum class Precision { Double, Extended };

struct FiberOptions {
  double quad_tol = 1e-12;
  Precision precision = Precision::Double;
  NondegeneracyTolerances nondegeneracy;
};

/// Geometry and combinatorics of a fiber that survive small moves of a: punctures of
/// the x1-projection with their lasso radii, the base point, the sheet labels there,
/// the lasso monodromy and the symplectic basis as combinations of Schreier loops.
struct FiberPlan {
  std::vector<std::complex<double>> punctures;
  std::vector<double> radii;
  std::vector<double> tail_angles;
  std::complex<double> base_point;
  std::vector<std::complex<double>> base_sheets;
  std::vector<Permutation> monodromy;
  std::vector<LassoLoop> candidates;
  IntMatrix intersections;
  IntMatrix transform;  // 2g x candidates
};

/// An integer combination of closed loops. Lasso loops start at the base point; polyline
/// loops are closed x1-paths starting on the given sheet (sheets at a point are labeled
/// by lexicographic order of the x2-roots).
struct PolylineLoop {
  std::vector<std::complex<double>> vertices;
  int start_sheet = 0;
};

struct Cycle {
  std::vector<std::pair<long, LassoLoop>> lasso_terms;
  std::vector<std::pair<long, PolylineLoop>> polyline_terms;

  Cycle reversed() const;
};

struct CycleValue {
  std::vector<std::complex<double>> omega;  // one per differential
  double eta = 0;
  std::complex<double> full{0};  // defined modulo (2 pi i)^2 Z
};

/// A smooth fiber presented as a branched cover of the x1-line.
struct CurveFiber {
  LaurentPolynomial polynomial;         // as given (Laurent)
  Exponent shift{};                     // x^shift * polynomial is the cleared F~
  std::vector<Exponent> differentials;  // interior points of F~'s polygon
  int genus = 0;
  int sheets = 0;
  FiberOptions options;

  FiberPlan plan;
  /// lassos[j][s]: integrals over the counterclockwise lasso around puncture j starting
  /// on sheet s at the base point.
  std::vector<std::vector<engine::PathIntegrals<double>>> lassos;
  std::vector<Cycle> basis;  // a_1..a_g, b_1..b_g
  engine::QuadratureStats stats;
};

/// Builds the fiber of an arbitrary Laurent polynomial. `differentials` defaults to the
/// interior points of the cleared polygon in lexicographic order. When `reuse` is given
/// its geometry and basis are transported; throws PlanInvalid if that is not possible.
CurveFiber build_fiber(const LaurentPolynomial& p, const FiberOptions& options = {},
                       const FiberPlan* reuse = nullptr, std::optional<std::vector<Exponent>> differentials = {});

/// Fiber of a family member; differentials follow the a_j order. Throws
/// NondegenerateFiberRequired on singular fibers and NumericallyAmbiguous near them.
CurveFiber build_fiber(const TemperedFamily& fam, const ParamVector& a, const FiberOptions& options = {},
                       const FiberPlan* reuse = nullptr);

struct BranchPoint {
  std::complex<double> x1;
  std::vector<int> cycle_type;  // lengths of the nontrivial cycles of the local monodromy
};
std::vector<BranchPoint> branch_points(const CurveFiber& fiber);

/// Continues the given x2-roots along a polyline in the x1-plane; returns the end roots
/// in the same order.
std::vector<std::complex<double>> analytic_continue(const CurveFiber& fiber,
                                                    const std::vector<std::complex<double>>& path,
                                                    const std::vector<std::complex<double>>& start_roots);

/// The permutation of sorted sheet labels produced by a closed polyline.
Permutation continuation_permutation(const CurveFiber& fiber, const std::vector<std::complex<double>>& closed_path);

/// Sorted x2-roots above x1.
std::vector<std::complex<double>> sheets_at(const CurveFiber& fiber, std::complex<double> x1);

struct HomologyBasis {
  std::vector<Cycle> cycles;
  IntMatrix intersection;  // pairing of the returned cycles
};
HomologyBasis homology_basis(const CurveFiber& fiber);

CycleValue integrate_cycle(const CurveFiber& fiber, const Cycle& cycle);

/// Integral of the k-th differential (0-based) over a cycle.
std::complex<double> integrate_differential(const CurveFiber& fiber, const Cycle& cycle, int k);

/// The integer matrix M with Pi(target) M = Pi(reference), i.e. reference cycle k is
/// sum_l M(l, k) target cycle l. Throws PlanInvalid unless M is integral and symplectic.
IntMatrix basis_change(const CurveFiber& target, const CurveFiber& reference);

/// Replaces basis cycle k by sum_l M(l, k) cycle l.
void rebase(CurveFiber& fiber, const IntMatrix& M);

/// Fresh fiber at a_to whose basis continues the basis of `from` (the fiber at a_from)
/// along the straight segment, in adaptive hops no shorter than 2^-max_depth of it.
CurveFiber transport(const TemperedFamily& fam, const CurveFiber& from, const ParamVector& a_from,
                     const ParamVector& a_to, const FiberOptions& options = {}, int max_depth = 12);

/// Lasso loops as a single-term cycle.
Cycle as_cycle(const LassoLoop& loop, long multiplicity = 1);
Cycle as_cycle(const PolylineLoop& loop, long multiplicity = 1);

}  // namespace tempered
