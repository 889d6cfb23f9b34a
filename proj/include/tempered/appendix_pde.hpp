#pragma once

// The line-segment matrix eps with G = (tau - eps) F for dG = tau dF, its power-series
// form for monomial-times-unit F, and a directional test for indeterminacy at 0.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tempered {

using MultiIndex = std::vector<int>;

/// Polynomial in d complex variables.
class MultiPoly {
 public:
  explicit MultiPoly(int d = 1) : d_(d) {}
  static MultiPoly constant(int d, std::complex<double> c);
  static MultiPoly monomial(const MultiIndex& alpha, std::complex<double> c = 1.0);
  /// z_k as a polynomial in d variables.
  static MultiPoly variable(int d, int k);

  int dimension() const { return d_; }
  const std::map<MultiIndex, std::complex<double>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  std::complex<double> coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, std::complex<double> c);
  std::complex<double> operator()(const Eigen::VectorXcd& z) const;
  MultiPoly derivative(int k) const;
  /// Polynomial in t obtained by substituting z = t * z0; coefficient j multiplies t^j.
  std::vector<std::complex<double>> along_ray(const Eigen::VectorXcd& z0) const;

  MultiPoly& operator+=(const MultiPoly& b);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(std::complex<double> c, const MultiPoly& a);

 private:
  int d_;
  std::map<MultiIndex, std::complex<double>> terms_;
};

/// u z^alpha with u(0) != 0, or the zero function.
struct MonomialUnit {
  bool identically_zero = false;
  MultiIndex alpha;
  MultiPoly unit;

  MultiPoly expand() const;
};

/// Components given as general polynomials; monomial-times-unit maps expand into this.
using PolyMap = std::vector<MultiPoly>;

/// g x g matrix of polynomials; unspecified entries are left empty.
using MatrixField = std::vector<std::vector<std::optional<MultiPoly>>>;

PolyMap expand(const std::vector<MonomialUnit>& F);

/// eps_ij(z) = (1/F_j(z)) * integral over t in [0, 1] of F_j(tz) d/dt tau_ij(tz), adaptive
/// Gauss-Kronrod with relative tolerance `tol`; 0 when F_j vanishes identically. Throws
/// OnZeroDivisor when F_j(z) = 0.
std::complex<double> epsilon_entry(const MultiPoly& Fj, const MultiPoly& tau_ij, const Eigen::VectorXcd& z,
                                   double tol = 1e-12);

/// Entries whose tau is unspecified come back as NaN.
Eigen::MatrixXcd epsilon_matrix(const PolyMap& F, const MatrixField& tau, const Eigen::VectorXcd& z,
                                double tol = 1e-12);

/// For F_j = u z^alpha: the polynomial N = sum_k z_k sum_beta c_beta z^beta / (|alpha| + |beta| + 1)
/// where c_beta are the coefficients of u d tau / d z_k. Then eps = N / u and N(0) = 0.
MultiPoly epsilon_series(const MultiIndex& alpha, const MultiPoly& tau_ij, const MultiPoly& unit);
std::complex<double> epsilon_series_value(const MonomialUnit& Fj, const MultiPoly& tau_ij, const Eigen::VectorXcd& z);

struct SplittingReport {
  double hypothesis_residual = 0;  // finite-difference |dG - tau dF|
  double splitting_residual = 0;   // max |G - S F| over samples
  double origin_residual = 0;      // |S(0) - tau(0)| from the series
  double series_agreement = 0;     // max |eps quadrature - eps series| over samples
  int samples = 0;
};

/// Builds S = tau - eps and checks G = S F at the samples and S(0) = tau(0). Throws
/// HypothesisViolated when dG != tau dF (or G(0) != tau(0) F(0)) and
/// SplittingResidualExceeded when either check fails its tolerance.
SplittingReport verify_splitting(const std::vector<MonomialUnit>& F, const PolyMap& G,
                                 const std::vector<std::vector<MultiPoly>>& tau,
                                 const std::vector<Eigen::VectorXcd>& samples, double hypothesis_tol = 1e-6,
                                 double splitting_tol = 1e-8);

/// A polynomial curve t -> z(t) with z(0) = 0; coords[k][j] multiplies t^j.
struct ApproachPath {
  std::string name;
  std::vector<std::vector<std::complex<double>>> coords;

  static ApproachPath line(const Eigen::VectorXcd& direction, std::string name = "");
  Eigen::VectorXcd operator()(double t) const;
};

struct PathLimit {
  std::string path;
  int i = 0, j = 0;
  bool converged = false;
  bool on_divisor = false;  // every sampled point had F_j = 0
  std::complex<double> limit{0};
  std::vector<std::pair<double, std::complex<double>>> trace;
};

struct IndeterminacyVerdict {
  bool indeterminate = false;
  std::vector<PathLimit> limits;
  std::string reason;
};

/// Follows every specified eps_ij along each path (t from t0 down to t_min, halving) and
/// calls it Indeterminate when a path fails to converge or two limits differ by more than
/// `tol`.
IndeterminacyVerdict detect_indeterminacy(const PolyMap& F, const MatrixField& tau,
                                          const std::vector<ApproachPath>& paths, double tol = 1e-6,
                                          double t0 = 0.1, double t_min = 1e-4);

/// Data of the star-shapedness counterexample: F, the pinned entry tau_11 and approach
/// paths, read from a JSON fixture.
struct IndeterminacyFixture {
  PolyMap F;
  MatrixField tau;
  std::vector<ApproachPath> paths;
};
IndeterminacyFixture load_indeterminacy_fixture(const std::string& path);

struct RandomSplitting {
  std::vector<MonomialUnit> F;
  std::vector<std::vector<MultiPoly>> tau;
  PolyMap G;
  std::vector<Eigen::VectorXcd> samples;
};

/// Random instance with g, d <= 3 and F_j of total degree <= `degree`: tau_ij = dPhi_i/dw_j
/// evaluated at w = F for random quadratic potentials Phi_i, and G_i = Phi_i(F).
RandomSplitting random_splitting_instance(std::uint64_t seed, int degree = 8, int samples = 6);

}  // namespace tempered
