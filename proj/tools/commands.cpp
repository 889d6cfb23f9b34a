#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "tempered/appendix_pde.hpp"
#include "tempered/asymptotics.hpp"
#include "tempered/cache.hpp"
#include "tempered/error.hpp"
#include "tempered/family_file.hpp"
#include "tempered/periods.hpp"
#include "tempered/records.hpp"
#include "tempered/regulator.hpp"

namespace tempered::cli {

using nlohmann::json;
using C = std::complex<double>;

namespace {

constexpr int kScanCacheVersion = 1;

std::string cx(C z) { return fmt::format("({}, {})", z.real(), z.imag()); }

std::string point(const LatticePoint& p) { return fmt::format("({},{})", p[0], p[1]); }

json document(const std::string& kind) {
  return {{"format", kRecordsFormat}, {"version", kRecordsVersion}, {"kind", kind}};
}

/// Loads the family, mapping every way of failing to read it onto a parse error.
TemperedFamily load_family(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::ParseError, "no --family given");
  return TemperedFamily::from_file(path);
}

bool is_input_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::DegeneratePolygon:
    case ErrorCode::InexactEdgeCoefficients:
    case ErrorCode::NonIntegerCoefficients:
      return true;
    default:
      return false;
  }
}

int fail(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << '\n';
  if (const auto* te = dynamic_cast<const Error*>(&e); te && is_input_error(*te)) return kParseError;
  if (const auto* te = dynamic_cast<const Error*>(&e); te && te->code() == ErrorCode::PreconditionViolated)
    return kParseError;
  return kRuntimeError;
}

json matrix(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixXcd& m) {
  out << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << ' ';
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << ' ' << cx(m(i, k));
    out << '\n';
  }
}

std::string scan_cache_key(const TemperedFamily& fam, const ScanBox& box, const SolverOptions& o) {
  json key = {{"what", "scan"},
              {"version", kScanCacheVersion},
              {"family", fam.canonical_text()},
              {"box", to_json(box)},
              {"resolution", o.resolution},
              {"quad_tol", o.fiber.quad_tol},
              {"nondegeneracy", {o.fiber.nondegeneracy.low, o.fiber.nondegeneracy.high}},
              {"seed_threshold", std::isfinite(o.seed_threshold) ? json(o.seed_threshold) : json("inf")}};
  return key.dump();
}

std::string scan_payload(const ScanGrid& grid) {
  json nodes = json::array();
  for (const auto& n : grid.nodes) nodes.push_back(to_json(n));
  return json{{"nodes", nodes}, {"seeds", grid.seeds}}.dump();
}

void write_grid_matrix(const std::string& path, const ScanBox& box, int resolution, const json& nodes) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  static const char* names[] = {"Re a_", "Im a_"};
  const int dim = box.dimension();
  out << "# grid " << resolution << " nodes per axis, row-major, last axis along each row\n";
  for (int k = 0; k < dim; ++k)
    out << "# axis " << k << ": " << names[k % 2] << (k / 2 + 1) << " from " << box.intervals[k].first << " to "
        << box.intervals[k].second << '\n';
  out << "# masked nodes are nan\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.at("masked").get<bool>())
      out << "nan";
    else
      out << fmt::format("{}", n.at("value").get<double>());
    out << ((i + 1) % resolution == 0 ? '\n' : ' ');
  }
}

// Closedness of log|x1| darg x2 - s log|x2| darg x1 on a small circle around the base point
// of the fiber, lifted to every sheet. The integrand is smooth and periodic, so the
// trapezoid rule converges geometrically.
double eta_loop_defect(const CurveFiber& f, double sign, int n = 256) {
  const C c = f.plan.base_point;
  const double r = 0.2 * *std::min_element(f.plan.radii.begin(), f.plan.radii.end());
  std::vector<C> x1(n + 1);
  for (int k = 0; k <= n; ++k) x1[k] = c + std::polar(r, 2 * std::numbers::pi * k / n);
  std::vector<std::vector<C>> roots{sheets_at(f, x1[0])};
  for (int k = 0; k < n; ++k) roots.push_back(analytic_continue(f, {x1[k], x1[k + 1]}, roots.back()));
  double worst = 0;
  for (int s = 0; s < f.sheets; ++s) {
    double sum = 0;
    for (int k = 0; k < n; ++k) {
      const C x = x1[k], y = roots[k][s];
      const C dx = C(0, 1) * (x - c);
      const Partials p = partials(f.polynomial, x, y);
      const C dy = -p.f_x1 / p.f_x2 * dx;
      sum += std::log(std::abs(x)) * (dy / y).imag() - sign * std::log(std::abs(y)) * (dx / x).imag();
    }
    worst = std::max(worst, std::abs(sum * 2 * std::numbers::pi / n));
  }
  return worst;
}

const char* kSquareText = "name: square\n(1,0): 1\n(-1,0): 1\n(0,1): 1\n(0,-1): 1\n(0,0): a_1\n";
const char* kGenus2Text = "name: genus2\n(2,0): 1\n(-1,0): 1\n(0,1): 1\n(0,-1): 1\n(0,0): a_1\n(1,0): a_2\n";

struct Row {
  std::string suite, check;
  bool passed;
  std::string detail;
};

void asymptotics_suite(const VerifyConfig& cfg, std::vector<Row>& rows) {
  HarnessReport rep = run_asymptotics_harness(cfg.models, cfg.seed);
  for (const char* kind : {"psi-nonzero", "psi-zero", "n-zero", "log-lemma"}) {
    int total = 0, ok = 0;
    double smallest = INFINITY;
    std::string first_error;
    for (const auto& c : rep.cases) {
      if (c.kind != kind) continue;
      ++total;
      if (c.passed) {
        ++ok;
        smallest = std::min(smallest, c.witness.radius);
      } else if (first_error.empty()) {
        first_error = fmt::format("#{}: {}", c.index, c.error);
      }
    }
    std::string detail = fmt::format("{}/{} positive radius", ok, total);
    if (ok > 0) detail += fmt::format(", min radius {:.3g}", smallest);
    if (!first_error.empty()) detail += "; " + first_error;
    rows.push_back({"asymptotics", kind, total > 0 && ok == total, detail});
  }
  double worst = 0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, dz_consistency(random_disk_model(cfg.seed + 7919 * (i + 1))));
  rows.push_back({"asymptotics", "d/dz consistency", worst < 1e-8, fmt::format("max residual {:.3g}", worst)});
}

void appendix_suite(const VerifyConfig& cfg, std::vector<Row>& rows) {
  double worst_split = 0, worst_origin = 0;
  int ok = 0;
  const int instances = 40;
  std::string first_error;
  for (int i = 0; i < instances; ++i) {
    try {
      auto inst = random_splitting_instance(cfg.seed + i);
      auto rep = verify_splitting(inst.F, inst.G, inst.tau, inst.samples);
      worst_split = std::max(worst_split, rep.splitting_residual);
      worst_origin = std::max(worst_origin, rep.origin_residual);
      ++ok;
    } catch (const Error& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  rows.push_back({"appendix", "random splittings", ok == instances && worst_split < 1e-8,
                  fmt::format("{}/{}, max |G - SF| {:.3g}, max |S(0) - tau(0)| {:.3g}{}", ok, instances, worst_split,
                              worst_origin, first_error.empty() ? "" : "; " + first_error)});

  IndeterminacyFixture fx;
  try {
    fx = load_indeterminacy_fixture(cfg.fixtures + "/indeterminacy.json");
  } catch (const Error& e) {
    rows.push_back({"appendix", "star-shapedness fixture", false, e.what()});
    return;
  }
  // Closed form of eps_11 for F_1 = z1 + z2^2, tau_11 = z1 + i.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  int samples = 0;
  while (samples < 50) {
    Eigen::VectorXcd z(2);
    z << C(u(rng), u(rng)), C(u(rng), u(rng));
    const C d = z[0] + z[1] * z[1];
    if (std::abs(d) < 1e-3) continue;
    const C want = (z[0] * z[0] / 2.0 + z[0] * z[1] * z[1] / 3.0) / d;
    const C got = epsilon_entry(fx.F[0], *fx.tau[0][0], z);
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    ++samples;
  }
  rows.push_back({"appendix", "eps_11 closed form", worst < 1e-10, fmt::format("max rel. error {:.3g}", worst)});
  auto v = detect_indeterminacy(fx.F, fx.tau, fx.paths);
  rows.push_back({"appendix", "indeterminate at 0", v.indeterminate, v.reason});
}

void regulator_suite(const VerifyConfig& cfg, std::vector<Row>& rows) {
  const double sign = cfg.mutate == "eta-sign" ? -1.0 : 1.0;
  const auto square = TemperedFamily::from_definition(parse_family(kSquareText));
  const auto genus2 = TemperedFamily::from_definition(parse_family(kGenus2Text));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-3, 3);
  double closed = 0, consistency = 0, symmetry = 0, min_eig = INFINITY;
  int fibers = 0;
  std::string first_error;
  for (const TemperedFamily* fam : {&square, &genus2}) {
    for (int done = 0, tries = 0; done < 3 && tries < 50; ++tries) {
      ParamVector a;
      for (int j = 0; j < fam->genus(); ++j) a.push_back(C(u(rng), u(rng)));
      try {
        if (!is_nondegenerate_fiber(*fam, a)) continue;
        CurveFiber f;
        auto rv = regulator_vector(*fam, a, {}, nullptr, &f);
        consistency = std::max(consistency, rv.consistency);
        symmetry = std::max(symmetry, rv.periods.symmetry_residual);
        min_eig = std::min(min_eig, rv.periods.min_imag_eigenvalue);
        closed = std::max(closed, eta_loop_defect(f, sign));
        ++done;
        ++fibers;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NumericallyAmbiguous) continue;
        if (first_error.empty()) first_error = e.what();
      }
    }
  }
  const std::string tail = first_error.empty() ? "" : "; " + first_error;
  const bool ran = fibers == 6 && first_error.empty();
  rows.push_back({"regulator", "eta closedness", ran && closed < 1e-9,
                  fmt::format("{} fibers, max contractible-loop integral {:.3g}{}", fibers, closed, tail)});
  rows.push_back({"regulator", "Im full period = eta period", ran && consistency < 1e-8,
                  fmt::format("max deviation {:.3g}", consistency)});
  rows.push_back({"regulator", "Riemann relations", ran && symmetry < 1e-8 && min_eig > 0,
                  fmt::format("max |tau - tau^T| {:.3g}, min eig Im tau {:.3g}", symmetry, min_eig)});
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol_quad > 0) || !(tol_newton > 0) || !(tol_torsion > 0) || max_den < 1)
    throw Error(ErrorCode::PreconditionViolated, "tolerances must be positive");
  if (resolution < 2) throw Error(ErrorCode::PreconditionViolated, "resolution must be at least 2");
  if (!box.empty() && (box.size() != 4 || !(box[0] < box[1]) || !(box[2] < box[3])))
    throw Error(ErrorCode::PreconditionViolated, "--box takes lo_re,hi_re,lo_im,hi_im with lo < hi");
}

ScanBox RunConfig::scan_box(int genus) const {
  if (box.empty()) return ScanBox::square_box(C(0.2, -1), C(3.8, 1), genus);
  return ScanBox::square_box(C(box[0], box[2]), C(box[1], box[3]), genus);
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.fiber.quad_tol = tol_quad;
  o.resolution = resolution;
  o.newton_tol = tol_newton;
  o.torsion_tol = tol_torsion;
  o.max_denominator = max_den;
  o.workers = workers;
  return o;
}

C parse_parameter(const std::string& text) { return parse_coefficient(text).value(); }

int cmd_analyze(const std::string& family_file, Format format, std::ostream& out, std::ostream& err) {
  std::optional<TemperedFamily> fam;
  try {
    fam.emplace(load_family(family_file));
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  const auto& poly = fam->polygon();
  const auto& report = fam->temperedness();
  if (format == Format::Records) {
    json doc = document("analysis");
    doc["name"] = fam->name();
    doc["genus"] = fam->genus();
    doc["tempered"] = fam->tempered();
    doc["vertices"] = json::array();
    for (const auto& v : poly.vertices) doc["vertices"].push_back({v[0], v[1]});
    doc["interior"] = json::array();
    for (const auto& v : poly.interior_points) doc["interior"].push_back({v[0], v[1]});
    doc["edges"] = json::array();
    for (const auto& ev : report.edges) {
      json coeffs = json::array();
      for (const auto& c : ev.polynomial.coeffs) coeffs.push_back(c.to_string());
      doc["edges"].push_back({{"start", {ev.polynomial.edge.start[0], ev.polynomial.edge.start[1]}},
                              {"end", {ev.polynomial.edge.end[0], ev.polynomial.edge.end[1]}},
                              {"coefficients", coeffs},
                              {"cyclotomic", ev.cyclotomic},
                              {"note", ev.note}});
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "family: " << fam->name() << '\n';
    out << "vertices:";
    for (const auto& v : poly.vertices) out << ' ' << point(v);
    out << "\ninterior:";
    for (const auto& v : poly.interior_points) out << ' ' << point(v);
    out << '\n';
    for (const auto& ev : report.edges) {
      out << "edge " << point(ev.polynomial.edge.start) << " -> " << point(ev.polynomial.edge.end) << ": ";
      for (int t = 0; t <= ev.polynomial.degree(); ++t) {
        if (t > 0) out << " + ";
        out << ev.polynomial.coeffs[t].to_string();
        if (t == 1) out << "*t";
        if (t > 1) out << "*t^" << t;
      }
      out << "  [" << ev.note << "]\n";
    }
    out << (fam->tempered() ? "tempered" : "not tempered") << ", g=" << fam->genus() << '\n';
  }
  return fam->tempered() ? kOk : kNotTempered;
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<TemperedFamily> fam;
  try {
    config.validate();
    fam.emplace(load_family(config.family));
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  if (!fam->tempered()) {
    err << "error: family " << fam->name() << " is not tempered\n";
    return kNotTempered;
  }
  if (fam->genus() == 0) {
    err << "nothing to scan: genus 0\n";
    return kNothingToScan;
  }
  const ScanBox box = config.scan_box(fam->genus());
  const SolverOptions opts = config.solver_options();

  json payload;
  try {
    auto compute = [&] { return scan_payload(scan_box(*fam, box, opts)); };
    std::string text;
    if (config.use_cache) {
      Cache cache(config.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(config.cache_dir));
      text = cache.get_or_compute(scan_cache_key(*fam, box, opts), compute);
      if (cache.corrupted() > 0) err << "warning: corrupted cache entry recomputed\n";
    } else {
      text = compute();
    }
    payload = json::parse(text);
  } catch (const std::exception& e) {
    return fail(err, e);
  }

  const json& nodes = payload.at("nodes");
  const json meta = {{"family", fam->name()},
                     {"family_sha256", sha256_hex(fam->canonical_text())},
                     {"box", to_json(box)},
                     {"resolution", config.resolution},
                     {"tol_quad", config.tol_quad},
                     {"seed", config.seed}};
  std::size_t masked = 0;
  if (config.format == Format::Records) {
    RecordWriter w(out, "scan", meta);
    for (const auto& n : nodes) {
      w.write(n);
      masked += n.at("masked").get<bool>();
    }
  } else {
    out << "# scan of " << fam->name() << ", " << config.resolution << " nodes per axis, box " << to_json(box).dump()
        << '\n';
    for (const auto& n : nodes) {
      std::string idx;
      for (const auto& i : n.at("index")) idx += fmt::format("{} ", i.get<int>());
      std::string a;
      for (const auto& z : n.at("a")) a += cx(complex_from_json(z)) + ' ';
      if (n.at("masked").get<bool>()) {
        ++masked;
        out << idx << a << "masked " << n.at("reason").get<std::string>() << '\n';
      } else {
        out << idx << a << fmt::format("{}", n.at("value").get<double>()) << '\n';
      }
    }
  }

  try {
    if (!config.seeds_out.empty()) {
      std::ofstream so(config.seeds_out);
      if (!so) throw Error(ErrorCode::ParseError, "cannot write " + config.seeds_out);
      RecordWriter w(so, "seeds", meta);
      for (const auto& s : payload.at("seeds")) {
        const auto& n = nodes.at(s.get<std::size_t>());
        w.write({{"index", n.at("index")}, {"a", n.at("a")}, {"value", n.at("value")}});
      }
    }
    if (!config.grid_out.empty()) write_grid_matrix(config.grid_out, box, config.resolution, nodes);
  } catch (const std::exception& e) {
    return fail(err, e);
  }

  err << nodes.size() << " nodes, " << masked << " masked, " << payload.at("seeds").size() << " seeds\n";
  if (masked == nodes.size()) {
    err << "error: every node is masked\n";
    return kAllMasked;
  }
  return kOk;
}

int cmd_refine(const RunConfig& config, const std::string& seeds_file, std::ostream& out, std::ostream& err) {
  std::optional<TemperedFamily> fam;
  RecordStream seeds;
  try {
    config.validate();
    fam.emplace(load_family(config.family));
    seeds = read_records_file(seeds_file);
    if (seeds.kind() != "seeds") throw Error(ErrorCode::ParseError, seeds_file + ": not a seeds file");
    if (seeds.header.contains("family_sha256") &&
        seeds.header["family_sha256"].get<std::string>() != sha256_hex(fam->canonical_text()))
      throw Error(ErrorCode::ParseError, seeds_file + ": seeds belong to a different family");
  } catch (const std::exception& e) {
    return fail(err, e);
  }

  ScanBox box;
  std::vector<ParamVector> start;
  try {
    box = config.box.empty() && seeds.header.contains("box") ? box_from_json(seeds.header["box"])
                                                             : config.scan_box(fam->genus());
    for (const auto& r : seeds.records) {
      start.push_back(param_from_json(r.at("a")));
      if (static_cast<int>(start.back().size()) != fam->genus())
        throw Error(ErrorCode::ParseError, "seed dimension does not match the genus");
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << seeds_file << ": " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    return fail(err, e);
  }

  EnumerationReport report;
  try {
    if (!start.empty()) report = refine_seeds(*fam, box, start, config.solver_options());
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  std::size_t diverged = 0;
  for (const auto& [a, outcome] : report.seed_outcomes) {
    if (outcome == "converged") continue;
    std::string where;
    for (auto z : a) where += cx(z);
    err << "seed " << where << ": " << (outcome == "left-box" ? "converged outside the box" : "skipped, " + outcome)
        << '\n';
    if (outcome != "left-box") ++diverged;
  }

  if (config.format == Format::Records) {
    json doc = document("report");
    doc["family"] = fam->name();
    doc["box"] = to_json(box);
    doc.update(to_json(report));
    out << doc.dump(2) << '\n';
  } else {
    out << "# exact points of " << fam->name() << " from " << start.size() << " seeds\n";
    out << report.points.size() << " points (" << report.refined << " refined, " << report.failed << " failed)\n";
    for (const auto& p : report.points) {
      std::string a;
      for (auto z : p.a) a += cx(z) + ' ';
      out << a << fmt::format("residual {:.3g} sigma_min {:.3g} certified {} torsion {}", p.residual, p.sigma_min,
                              p.certificate.certified, p.torsion.candidate ? "candidate" : "no")
          << '\n';
    }
  }
  if (!start.empty() && diverged == report.seed_outcomes.size() && !report.seed_outcomes.empty()) {
    err << "error: every seed failed to converge\n";
    return kAllSeedsFailed;
  }
  return kOk;
}

int cmd_periods(const RunConfig& config, const ParamVector& a, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    auto fam = load_family(config.family);
    if (static_cast<int>(a.size()) != fam.genus())
      throw Error(ErrorCode::PreconditionViolated, fmt::format("expected {} values of --a", fam.genus()));
    FiberOptions fo;
    fo.quad_tol = config.tol_quad;
    const auto pm = period_matrix(build_fiber(fam, a, fo));
    if (config.format == Format::Records) {
      json doc = document("periods");
      doc["a"] = to_json(a);
      doc.update(to_json(pm));
      out << doc.dump(2) << '\n';
    } else {
      print_matrix(out, "Pi", pm.Pi);
      print_matrix(out, "tau", pm.tau);
      out << fmt::format("|tau - tau^T| {:.3g}\nmin eig Im tau {}\nA-block condition {:.3g}\n", pm.symmetry_residual,
                         pm.min_imag_eigenvalue, pm.a_block_condition);
    }
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  return kOk;
}

int cmd_regulator(const RunConfig& config, const ParamVector& a, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    auto fam = load_family(config.family);
    if (static_cast<int>(a.size()) != fam.genus())
      throw Error(ErrorCode::PreconditionViolated, fmt::format("expected {} values of --a", fam.genus()));
    FiberOptions fo;
    fo.quad_tol = config.tol_quad;
    const auto rv = regulator_vector(fam, a, fo);
    if (config.format == Format::Records) {
      json doc = document("regulator");
      doc.update(to_json(rv));
      out << doc.dump(2) << '\n';
    } else {
      const int g = fam.genus();
      for (int k = 0; k < 2 * g; ++k)
        out << (k < g ? "a" : "b") << (k % g + 1) << fmt::format(": eta {}  full {}\n", rv.eta_periods[k],
                                                                  cx(rv.full_periods[k]));
      out << fmt::format("norm {}\nhodge norm {}\nmax |Im full - eta| {:.3g}\n", rv.norm, rv.hodge_norm,
                         rv.consistency);
    }
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  return kOk;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err) {
  const std::string& s = config.suite;
  if (s != "all" && s != "asymptotics" && s != "appendix" && s != "regulator") {
    err << "error: unknown suite " << s << '\n';
    return kParseError;
  }
  if (!config.mutate.empty() && config.mutate != "eta-sign") {
    err << "error: unknown mutation " << config.mutate << '\n';
    return kParseError;
  }
  std::vector<Row> rows;
  auto guarded = [&](const char* name, auto&& run) {
    try {
      run(config, rows);
    } catch (const std::exception& e) {
      rows.push_back({name, "suite", false, e.what()});
    }
  };
  if (s == "all" || s == "asymptotics") guarded("asymptotics", asymptotics_suite);
  if (s == "all" || s == "appendix") guarded("appendix", appendix_suite);
  if (s == "all" || s == "regulator") guarded("regulator", regulator_suite);

  std::size_t w1 = 5, w2 = 5;
  for (const auto& r : rows) {
    w1 = std::max(w1, r.suite.size());
    w2 = std::max(w2, r.check.size());
  }
  out << fmt::format("{:<{}}  {:<{}}  {:<6}{}\n", "suite", w1, "check", w2, "result", "  detail");
  bool all = true;
  for (const auto& r : rows) {
    out << fmt::format("{:<{}}  {:<{}}  {:<6}  {}\n", r.suite, w1, r.check, w2, r.passed ? "PASS" : "FAIL", r.detail);
    all = all && r.passed;
  }
  if (!config.mutate.empty()) out << "mutation: " << config.mutate << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace tempered::cli
