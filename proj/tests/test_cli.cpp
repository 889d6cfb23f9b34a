#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "tempered/records.hpp"

using namespace tempered;
using namespace tempered::cli;
namespace fs = std::filesystem;

namespace {

const std::string kFix = TEMPERED_FIXTURES;

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("tempered-cli-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

RunConfig small_scan(const fs::path& dir) {
  RunConfig c;
  c.family = kFix + "/square.family";
  c.resolution = 7;
  c.cache_dir = (dir / "cache").string();
  c.format = Format::Records;
  return c;
}

}  // namespace

TEST_CASE("analyze") {
  std::ostringstream out, err;
  CHECK(cmd_analyze(kFix + "/square.family", Format::Text, out, err) == kOk);
  CHECK(out.str().find("tempered, g=1") != std::string::npos);

  out.str("");
  CHECK(cmd_analyze(kFix + "/square_mutated.family", Format::Text, out, err) == kNotTempered);
  CHECK(out.str().find("edge not cyclotomic") != std::string::npos);
  CHECK(out.str().find("not tempered, g=1") != std::string::npos);

  out.str("");
  CHECK(cmd_analyze(kFix + "/malformed.family", Format::Text, out, err) == kParseError);
  CHECK(err.str().find("line 3") != std::string::npos);
  CHECK(cmd_analyze(kFix + "/missing.family", Format::Text, out, err) == kParseError);

  out.str("");
  CHECK(cmd_analyze(kFix + "/genus2.family", Format::Records, out, err) == kOk);
  auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["genus"] == 2);
  CHECK(doc["tempered"] == true);
  CHECK(doc["format"] == kRecordsFormat);
}

TEST_CASE("scan output, seeds, grid and cache") {
  const fs::path dir = scratch("scan");
  RunConfig c = small_scan(dir);
  c.seeds_out = (dir / "seeds").string();
  c.grid_out = (dir / "grid").string();
  std::ostringstream first, second, err;
  REQUIRE(cmd_scan(c, first, err) == kOk);
  std::istringstream in(first.str());
  auto rs = read_records(in);
  CHECK(rs.kind() == "scan");
  CHECK(rs.records.size() == 49);
  CHECK_FALSE(rs.header.contains("workers"));

  auto seeds = read_records_file(c.seeds_out);
  CHECK(seeds.kind() == "seeds");
  CHECK(seeds.records.size() >= 1);
  CHECK(seeds.records.size() < 49);

  std::ifstream grid(c.grid_out);
  std::string line;
  int rows = 0;
  while (std::getline(grid, line))
    if (line[0] != '#') ++rows;
  CHECK(rows == 7);

  // The second run is served from the cache and must not differ.
  c.workers = 3;
  REQUIRE(cmd_scan(c, second, err) == kOk);
  CHECK(first.str() == second.str());

  // A damaged entry is recomputed, not used.
  for (const auto& e : fs::directory_iterator(dir / "cache")) std::ofstream(e.path(), std::ios::app) << "garbage";
  std::ostringstream third, err3;
  REQUIRE(cmd_scan(c, third, err3) == kOk);
  CHECK(third.str() == first.str());
  CHECK(err3.str().find("corrupted") != std::string::npos);
}

TEST_CASE("scan preconditions") {
  const fs::path dir = scratch("pre");
  std::ostringstream out, err;
  RunConfig c = small_scan(dir);
  c.family = kFix + "/triangle.family";
  CHECK(cmd_scan(c, out, err) == kNothingToScan);
  CHECK(err.str().find("nothing to scan") != std::string::npos);

  c = small_scan(dir);
  c.resolution = 1;
  CHECK(cmd_scan(c, out, err) == kParseError);
  c = small_scan(dir);
  c.tol_quad = 0;
  CHECK(cmd_scan(c, out, err) == kParseError);

  // A box around the singular fiber a = 4 that is too small to hold a regular node.
  c = small_scan(dir);
  c.resolution = 2;
  c.box = {4 - 1e-14, 4 + 1e-14, -1e-14, 1e-14};
  CHECK(cmd_scan(c, out, err) == kAllMasked);
}

TEST_CASE("refine") {
  const fs::path dir = scratch("refine");
  std::ostringstream out, err;
  RunConfig c = small_scan(dir);

  // Empty seeds: empty report.
  {
    std::ofstream f(dir / "empty");
    RecordWriter w(f, "seeds");
  }
  REQUIRE(cmd_refine(c, (dir / "empty").string(), out, err) == kOk);
  auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["kind"] == "report");
  CHECK(doc["points"].empty());

  // A seed near the singular fiber a = 0 runs into it: skipped with a diagnostic, and
  // since nothing converged the exit code is 5.
  {
    std::ofstream f(dir / "near-zero");
    RecordWriter w(f, "seeds");
    w.write({{"a", to_json(ParamVector{{0.3, 0.0}})}});
  }
  std::ostringstream out2, err2;
  CHECK(cmd_refine(c, (dir / "near-zero").string(), out2, err2) == kAllSeedsFailed);
  CHECK(err2.str().find("skipped") != std::string::npos);

  std::ostringstream out3, err3;
  CHECK(cmd_refine(c, kFix + "/square.family", out3, err3) == kParseError);
}

TEST_CASE("periods and regulator dumps") {
  RunConfig c;
  c.family = kFix + "/square.family";
  c.format = Format::Records;
  std::ostringstream out, err;
  REQUIRE(cmd_periods(c, {2.5}, out, err) == kOk);
  auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["min_imag_eigenvalue"].get<double>() > 0);

  std::ostringstream rout;
  REQUIRE(cmd_regulator(c, {2.5}, rout, err) == kOk);
  auto r = nlohmann::json::parse(rout.str());
  CHECK(r["eta_periods"].size() == 2);
  CHECK(r["consistency"].get<double>() < 1e-8);

  CHECK(cmd_periods(c, {4.0}, out, err) == kRuntimeError);
  CHECK(cmd_regulator(c, {1.0, 2.0}, out, err) == kParseError);
  CHECK(parse_parameter("1/2-3i") == std::complex<double>(0.5, -3));
}

TEST_CASE("verify suites and mutation") {
  VerifyConfig v;
  v.fixtures = kFix;
  v.models = 30;
  std::ostringstream out, err;
  CHECK(cmd_verify(v, out, err) == kOk);
  CHECK(out.str().find("FAIL") == std::string::npos);
  CHECK(out.str().find("regulator") != std::string::npos);

  v.suite = "appendix";
  std::ostringstream app;
  CHECK(cmd_verify(v, app, err) == kOk);
  CHECK(app.str().find("asymptotics") == std::string::npos);
  CHECK(app.str().find("regulator") == std::string::npos);
  CHECK(app.str().find("indeterminate at 0") != std::string::npos);

  v.suite = "all";
  v.mutate = "eta-sign";
  std::ostringstream mut;
  CHECK(cmd_verify(v, mut, err) == kVerifyFailed);
  CHECK(mut.str().find("eta closedness") != std::string::npos);
  bool flagged = false;
  std::istringstream lines(mut.str());
  for (std::string l; std::getline(lines, l);)
    if (l.find("eta closedness") != std::string::npos) flagged = l.find("FAIL") != std::string::npos;
  CHECK(flagged);

  v.suite = "nope";
  v.mutate.clear();
  CHECK(cmd_verify(v, out, err) == kParseError);
}
