#pragma once

// Verbs of the tempered command-line tool. Every command writes to the given streams and
// returns the process exit code.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tempered/solver.hpp"

namespace tempered::cli {

enum Exit : int {
  kOk = 0,
  kNotTempered = 1,
  kVerifyFailed = 1,
  kParseError = 2,
  kAllMasked = 3,
  kNothingToScan = 4,
  kAllSeedsFailed = 5,
  kRuntimeError = 6,
};

enum class Format { Text, Records };

struct RunConfig {
  std::string family;
  std::vector<double> box;  // lo_re, hi_re, lo_im, hi_im, applied to every a_j
  int resolution = 41;
  double tol_quad = 1e-12;
  double tol_newton = 1e-10;
  double tol_torsion = 1e-8;
  long max_den = 100;
  std::string cache_dir;  // empty: Cache::default_dir()
  bool use_cache = true;
  unsigned workers = 0;
  std::uint64_t seed = 1;
  Format format = Format::Text;
  std::string seeds_out;
  std::string grid_out;

  /// Throws PreconditionViolated on nonpositive tolerances, resolution < 2 or a bad box.
  void validate() const;
  ScanBox scan_box(int genus) const;
  SolverOptions solver_options() const;
};

struct VerifyConfig {
  std::string suite = "all";  // all, asymptotics, appendix, regulator
  std::string mutate;         // "", eta-sign
  std::string fixtures;       // directory holding indeterminacy.json
  int models = 100;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

int cmd_analyze(const std::string& family_file, Format format, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_refine(const RunConfig& config, const std::string& seeds_file, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);
int cmd_periods(const RunConfig& config, const ParamVector& a, std::ostream& out, std::ostream& err);
int cmd_regulator(const RunConfig& config, const ParamVector& a, std::ostream& out, std::ostream& err);

/// "2.5", "1/2-3i", ...: parsed as a family coefficient and converted to double.
std::complex<double> parse_parameter(const std::string& text);

}  // namespace tempered::cli
