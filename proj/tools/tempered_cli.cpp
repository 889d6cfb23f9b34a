#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace tempered;
using namespace tempered::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact points and regulators of tempered families"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text", output, seeds_file;
  std::vector<std::string> params;
  VerifyConfig vcfg;
  vcfg.fixtures = TEMPERED_FIXTURES;

  auto common = [&](CLI::App* sub, bool scanning) {
    sub->add_option("--family", cfg.family, "family definition file")->required();
    sub->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));
    sub->add_option("--output,-o", output, "write the main output here instead of stdout");
    sub->add_option("--tol-quad", cfg.tol_quad, "quadrature tolerance");
    if (!scanning) return;
    sub->add_option("--box", cfg.box, "lo_re,hi_re,lo_im,hi_im for every a_j")->delimiter(',')->expected(4);
    sub->add_option("--resolution", cfg.resolution, "nodes per real axis");
    sub->add_option("--tol-newton", cfg.tol_newton, "Newton tolerance");
    sub->add_option("--tol-torsion", cfg.tol_torsion, "torsion reconstruction tolerance");
    sub->add_option("--max-den", cfg.max_den, "torsion denominator bound");
    sub->add_option("--cache-dir", cfg.cache_dir, "cache root (default $TEMPERED_CACHE_DIR)");
    sub->add_flag("!--no-cache", cfg.use_cache, "neither read nor write the cache");
    sub->add_option("--workers", cfg.workers, "worker threads (0: all cores)");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "Newton polygon, genus and temperedness");
  analyze->add_option("--family", cfg.family, "family definition file")->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  analyze->add_option("--output,-o", output);

  auto* scan = app.add_subcommand("scan", "regulator norm on a grid, with seeds for refinement");
  common(scan, true);
  scan->add_option("--seeds-out", cfg.seeds_out, "write seeds here");
  scan->add_option("--grid-out", cfg.grid_out, "write a dense value matrix here");

  auto* refine = app.add_subcommand("refine", "Newton refinement of seeds into exact points");
  common(refine, true);
  refine->add_option("--seeds", seeds_file, "seeds file written by scan")->required();

  auto* periods = app.add_subcommand("periods", "period matrix of one fiber");
  common(periods, false);
  periods->add_option("--a", params, "value of a_j, repeated for every j")->required();

  auto* regulator = app.add_subcommand("regulator", "regulator vector of one fiber");
  common(regulator, false);
  regulator->add_option("--a", params, "value of a_j, repeated for every j")->required();

  auto* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("--suite", vcfg.suite, "all, asymptotics, appendix or regulator")
      ->check(CLI::IsMember({"all", "asymptotics", "appendix", "regulator"}));
  verify->add_option("--mutate", vcfg.mutate, "inject a defect the suites must catch")
      ->check(CLI::IsMember({"eta-sign"}));
  verify->add_option("--models", vcfg.models, "random disk models");
  verify->add_option("--seed", vcfg.seed, "random seed");
  verify->add_option("--fixtures", vcfg.fixtures, "directory with indeterminacy.json");
  verify->add_option("--output,-o", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }
  cfg.format = format == "records" ? Format::Records : Format::Text;

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "error: cannot write " << output << '\n';
      return kParseError;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file;

  ParamVector a;
  try {
    for (const auto& p : params) a.push_back(parse_parameter(p));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }

  if (*analyze) return cmd_analyze(cfg.family, cfg.format, out, std::cerr);
  if (*scan) return cmd_scan(cfg, out, std::cerr);
  if (*refine) return cmd_refine(cfg, seeds_file, out, std::cerr);
  if (*periods) return cmd_periods(cfg, a, out, std::cerr);
  if (*regulator) return cmd_regulator(cfg, a, out, std::cerr);
  return cmd_verify(vcfg, out, std::cerr);
}
