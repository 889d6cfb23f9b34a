#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tempered/regulator.hpp"

namespace tempered {

/// Real intervals for (Re a_1, Im a_1, Re a_2, Im a_2, ...).
struct ScanBox {
  std::vector<std::pair<double, double>> intervals;

  static ScanBox square_box(std::complex<double> lo, std::complex<double> hi, int genus);
  int dimension() const { return static_cast<int>(intervals.size()); }
  bool empty() const;
  bool contains(const ParamVector& a, double slack = 0) const;
};

ParamVector to_param(const Eigen::VectorXd& x);
Eigen::VectorXd to_real(const ParamVector& a);

struct SolverOptions {
  FiberOptions fiber;
  int resolution = 41;            // nodes per real axis
  double seed_threshold = std::numeric_limits<double>::infinity();  // seeds: local minima below this
  double newton_tol = 1e-10;
  int max_iter = 30;
  double max_step = 0.5;          // Newton steps are shortened to this length
  double max_condition = 1e12;
  double isolation_radius = 1e-2;
  int sphere_samples = 64;
  long max_denominator = 100;
  double torsion_tol = 1e-8;
  std::size_t budget = 1000;      // maximal number of Newton runs
  unsigned workers = 0;           // 0: hardware concurrency
  /// Solve eta periods = target instead of = 0, the target being read in the basis of the
  /// fresh fiber at the seed. Empty means 0.
  std::vector<double> target;
};

/// One grid node. `value` is the Hodge norm of the real regulator (basis independent,
/// hence independent of traversal order); `euclidean` is |r|_2 in the node's own basis.
struct ScanNode {
  std::vector<int> index;
  ParamVector a;
  double value = 0;
  double euclidean = 0;
  bool masked = false;
  std::string mask_reason;
};

struct ScanGrid {
  ScanBox box;
  int resolution = 0;
  std::vector<ScanNode> nodes;  // row-major in the box coordinates, last axis fastest
  std::vector<std::size_t> seeds;
  std::size_t masked_count() const;
};

/// Throws GenusZeroNothingToScan for g = 0. Node failures are masked, never fatal.
ScanGrid scan_box(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& options = {});

struct Certificate {
  double radius = 0;
  double floor = 0;  // min Hodge norm over the unmasked samples
  int samples = 0;
  int masked = 0;
  bool certified = false;
  bool partial = false;
};

struct ExactPoint {
  ParamVector a;
  ParamVector seed;
  std::vector<double> target;
  double residual = 0;  // Hodge norm at a
  int iterations = 0;
  std::vector<double> history;
  double condition = 0;
  double sigma_min = 0;
  std::vector<std::complex<double>> full_periods;
  Certificate certificate;
  TorsionVerdict torsion;
};

/// Damped Newton on the 2g eta periods with Armijo backtracking; the basis is held fixed
/// within each step by transporting the current fiber's plan to the trial points.
ExactPoint newton_refine(const TemperedFamily& fam, const ParamVector& a0, const SolverOptions& options = {});

/// Samples the sphere |a - a*| = radius along low-discrepancy directions. Throws ZeroRadius.
Certificate certify_isolated(const TemperedFamily& fam, const ExactPoint& point, double radius, int samples,
                             const SolverOptions& options = {});

struct EnumerationReport {
  std::vector<ExactPoint> points;  // sorted lexicographically in the real coordinates
  std::size_t nodes = 0;
  std::size_t masked = 0;
  std::size_t seeds = 0;
  std::size_t refined = 0;
  std::size_t failed = 0;
  /// Per refined seed: "converged", "left-box" or the error code that stopped Newton.
  std::vector<std::pair<ParamVector, std::string>> seed_outcomes;
  bool all_masked = false;
  bool budget_exceeded = false;
};

/// Keeps one point (the smallest residual) per cluster of points closer than merge_radius,
/// in the order given, and sorts the survivors lexicographically.
std::vector<ExactPoint> deduplicate(std::vector<ExactPoint> points, double merge_radius);

/// Refines the given seeds (at most `budget` of them), keeps converged points inside the
/// box, merges points closer than ten isolation radii, certifies and runs the torsion test.
EnumerationReport refine_seeds(const TemperedFamily& fam, const ScanBox& box, std::vector<ParamVector> seeds,
                               const SolverOptions& options = {});

/// Scan, refine every seed, keep points inside the box, merge points closer than ten
/// isolation radii, certify and run the torsion test. Genus 0 gives an empty report.
/// When the seed count exceeds the budget the first `budget` seeds are refined and the
/// report is flagged (see enumerate_or_throw for the throwing variant).
EnumerationReport enumerate_exact_points(const TemperedFamily& fam, const ScanBox& box,
                                         const SolverOptions& options = {});

/// As above but throws BudgetExceededError carrying the partial report.
EnumerationReport enumerate_or_throw(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& options = {});

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(EnumerationReport partial)
      : Error(ErrorCode::BudgetExceeded, "Newton budget exhausted"), partial_(std::move(partial)) {}
  const EnumerationReport& partial() const { return partial_; }

 private:
  EnumerationReport partial_;
};

}  // namespace tempered
