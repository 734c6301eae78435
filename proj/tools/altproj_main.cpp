// altproj command-line front end.
//
//   altproj run <config-or-builtin> [--out DIR] [--seed N] [--max-pairs N]
//   altproj catalog
//   altproj verify [--quick]
//
// Exit codes: 0 success, 1 input error, 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "altproj/altproj.hpp"

namespace {

namespace fs = std::filesystem;

int cmd_run(const std::string& source, const std::string& out_dir,
            std::optional<std::uint64_t> seed,
            std::optional<std::size_t> max_pairs) {
  std::optional<altproj::ScenarioConfig> cfg;
  if (const altproj::BuiltinScenario* b = altproj::find_builtin(source)) {
    cfg = b->config;
  } else {
    std::ifstream in(source);
    if (!in) {
      std::cerr << "error: cannot open config '" << source
                << "' (not a file, not a builtin name)\n";
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = altproj::config_from_text(ss.str(), source);
  }

  altproj::RunOptions opts;
  opts.seed_override = seed;
  opts.max_pairs_override = max_pairs;
  altproj::ScenarioOutcome oc = altproj::run_scenario(*cfg, opts);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  fs::path trace_path = dir / (cfg->name + ".trace.csv");
  fs::path report_path = dir / (cfg->name + ".report.json");
  altproj::write_trace_csv(trace_path, oc.trace);
  altproj::write_report(report_path, oc.report);

  std::cerr << cfg->name << ": " << oc.report.pairs << " pairs, stop "
            << altproj::to_string(oc.report.stop_reason) << ", gap_limit "
            << oc.report.gap_limit.value << " ± "
            << oc.report.gap_limit.uncertainty << ", verdict "
            << altproj::to_string(oc.report.verdict.cls) << " ("
            << oc.report.wall_ms << " ms)\n";
  std::cerr << "wrote " << trace_path.string() << ", " << report_path.string()
            << "\n";

  if (oc.report.pass && !*oc.report.pass) {
    for (const altproj::CheckResult& c : oc.report.checks) {
      if (!c.pass)
        std::cerr << "expected-check failed: " << c.name << ": " << c.detail
                  << "\n";
    }
    return 2;
  }
  return 0;
}

int cmd_catalog() {
  std::printf("%-22s %-34s %s\n", "name", "claim", "description");
  std::printf("%s\n", std::string(100, '-').c_str());
  for (const altproj::BuiltinScenario& b : altproj::builtin_scenarios()) {
    std::printf("%-22s %-34s %s\n", b.name.c_str(), b.claim.c_str(),
                b.description.c_str());
  }
  return 0;
}

int cmd_verify(bool quick) {
  altproj::VerifyOptions opts;
  opts.quick = quick;
  altproj::VerifyResult res = altproj::run_verify(opts, std::cout);
  if (!res.all_pass) {
    std::cerr << "verify failed: " << res.first_failure
              << ", first failing residual " << res.first_residual << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "alternating nearest-point projections onto closed convex sets: "
      "drivers, diagnostics and self-verification"};
  app.require_subcommand(1);

  std::string config_source;
  std::string out_dir;
  if (const char* env = std::getenv("ALTPROJ_OUT")) out_dir = env;
  if (out_dir.empty()) out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_pairs;

  CLI::App* run = app.add_subcommand(
      "run", "run a scenario config (path or builtin name)");
  run->add_option("config", config_source,
                  "path to a scenario JSON, or a builtin name")
      ->required();
  run->add_option("--out", out_dir, "output directory (default $ALTPROJ_OUT or .)");
  std::uint64_t seed_val = 0;
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_val, "override the random-x0 seed");
  std::size_t max_pairs_val = 0;
  CLI::Option* mp_opt = run->add_option("--max-pairs", max_pairs_val,
                                        "override the pair budget");

  CLI::App* catalog =
      app.add_subcommand("catalog", "list builtin scenarios and their claims");

  bool quick = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "run every builtin plus the property suites");
  verify->add_flag("--quick", quick, "reduced sample counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (*seed_opt) seed = seed_val;
      if (*mp_opt) max_pairs = max_pairs_val;
      return cmd_run(config_source, out_dir, seed, max_pairs);
    }
    if (catalog->parsed()) return cmd_catalog();
    if (verify->parsed()) return cmd_verify(quick);
  } catch (const altproj::ConfigError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const altproj::DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
