#pragma once

// Punctured-disk model of a normal function over a weight-one variation with unipotent
// monodromy alpha -> alpha - n beta, and the scalar lemmas behind boundary nonvanishing.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace tempered {

/// Truncated power series sum c_k z^k with a geometric tail bound |c_k| <= tail_c tail_q^k
/// for k past the truncation.
struct Series {
  std::vector<std::complex<double>> c;
  double tail_c = 0;
  double tail_q = 0;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  /// Index of the first nonzero stored coefficient, -1 for the zero truncation.
  int order() const;
  bool is_zero() const { return order() < 0 && tail_c == 0; }
  std::complex<double> operator()(std::complex<double> z) const;
  std::complex<double> derivative(std::complex<double> z) const;
  /// Bound on sum_{k > degree} |c_k| r^k. Throws SeriesTailTooLarge if tail_q r >= 1.
  double tail(double r) const;
  /// Bound on sum_{k >= from} |c_k| r^k including the tail.
  double majorant(double r, int from = 0) const;
};

struct DiskModel {
  int n = 0;
  Series eta;  // tau = eta + n l(z); for n = 0 tau = eta
  Series f;
  std::complex<double> Psi{0};        // limit coefficient of beta
  std::complex<double> Psi_alpha{0};  // limit coefficient of alpha, n = 0 only
  double radius = 0.5;

  int k() const { return f.order(); }
  /// Throws PreconditionViolated unless n >= 0, f is not identically zero, the radius is
  /// in (0, 1) and (for n > 0) Psi_alpha = 0.
  void validate() const;
};

/// l(z) = log(z) / 2 pi i on the principal branch.
std::complex<double> ell(std::complex<double> z);

/// R~ = F alpha + G beta in the flat (multivalued) frame, with
/// F = z^{k+1} U, G = Psi + z^{k+1} U (H + n l(z)) for n > 0 and
/// F = Psi_alpha + z^{k+1} U, G = Psi + z^{k+1} U H_0 for n = 0.
class RTilde {
 public:
  explicit RTilde(const DiskModel& model);

  const DiskModel& model() const { return m_; }
  int k() const { return k_; }
  const std::vector<std::complex<double>>& U() const { return U_; }
  const std::vector<std::complex<double>>& U_tilde() const { return Ut_; }
  /// G_0 / z^{k+1}.
  const std::vector<std::complex<double>>& V() const { return V_; }

  std::complex<double> U(std::complex<double> z) const;
  std::complex<double> U_tilde(std::complex<double> z) const;
  std::complex<double> H0(std::complex<double> z) const;
  /// H_0 - (n / 2 pi i) U~/U.
  std::complex<double> H(std::complex<double> z) const;
  std::complex<double> F(std::complex<double> z) const;
  std::complex<double> G(std::complex<double> z) const;
  /// Coefficient of beta in Im R~ written in the frame (alpha + n l beta, beta).
  std::complex<double> beta_coefficient_tilde(std::complex<double> z) const;

  /// Rigorous bounds on |z| <= r. Throw SeriesTailTooLarge when U cannot be shown to
  /// be a unit on the disk.
  double sup_U(double r) const;
  double inf_U(double r) const;
  double sup_V(double r) const;
  double sup_H(double r) const;
  double sup_H0_minus_tau0(double r) const;

 private:
  DiskModel m_;
  int k_;
  std::vector<std::complex<double>> U_, Ut_, V_;
};

struct Witness {
  double radius = 0;
  double floor = 0;  // smallest sampled value of the quantity that must stay positive
  long samples = 0;
};

struct SweepOptions {
  int radii = 48;
  int angles = 64;
  double min_radius = 1e-8;
};

/// Requires n > 0 and Im Psi != 0.
Witness verify_nonvanishing_psi_nonzero(const DiskModel& model, const SweepOptions& sweep = {});

/// Requires n > 0 and Im Psi = 0. The returned radius is min(radius, exp(-4 pi B / n))
/// with B a bound on |H|; the floor is the smallest sampled bracket minus 1/2.
Witness verify_nonvanishing_psi_zero(const DiskModel& model, const SweepOptions& sweep = {});

/// Requires n = 0 and Im eta(0) > 0. Zeros of Im F are located on every sampled circle
/// and Im G is checked there; the floor is min |Im G| / |F| over them (or the constant
/// floor when Im Psi_alpha or Im Psi_beta is nonzero).
Witness verify_n_zero_case(const DiskModel& model, const SweepOptions& sweep = {});

/// Dispatches on n and Im Psi.
Witness verify_disk_model(const DiskModel& model, const SweepOptions& sweep = {});

/// Max over sampled z of the error of dF/dz = f and dG/dz = f (eta + n l) by central
/// differences with step h.
double dz_consistency(const DiskModel& model, int samples = 32, double h = 1e-5);

/// No zeros of A(t) - B(t) log|t| on 0 < |t| < returned radius (at most eps). A and B
/// are real polynomial coefficient vectors.
Witness log_lemma_test(const std::vector<double>& A, const std::vector<double>& B, double eps, int samples = 2000);

struct SingularModel {
  std::vector<double> a;  // singularity class entries
  double harmonic_bound = 0;
};

/// r = min(eps, exp(-(B_h + 1) / min |a_j != 0|)) with |a_j log|z|| > B_h checked on
/// sampled |z| < r for every nonzero a_j.
Witness singular_bound_test(const SingularModel& model, double eps = 1.0, const SweepOptions& sweep = {});

struct HarnessCase {
  int index = 0;
  std::string kind;  // psi-nonzero, psi-zero, n-zero, log-lemma
  bool passed = false;
  Witness witness;
  std::string error;
};

struct HarnessReport {
  std::vector<HarnessCase> cases;
  int passed() const;
};

DiskModel random_disk_model(std::uint64_t seed);

/// `models` random DiskModels (n in 0..5, coefficients in [-1, 1], degree <= 8) and as
/// many random log-lemma pairs.
HarnessReport run_asymptotics_harness(int models, std::uint64_t seed, const SweepOptions& sweep = {});

}  // namespace tempered
