// Experiment driver: runs named experiment families from a config file and
// writes CSV/JSON artifacts plus a pass/fail summary per subcommand.
//
// Exit codes: 0 ok, 1 config/validation error, 2 numerical failure,
// 3 acceptance-threshold failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "ff/config.hpp"
#include "ff/errors.hpp"
#include "ff/experiments.hpp"

namespace {

void print_result(const ff::RunResult& res) {
  std::printf("== %s ==\n", res.subcommand.c_str());
  for (const auto& r : res.rows) {
    std::printf("  [%s] %-34s measured=%- .6g threshold=%- .6g%s%s\n",
                r.pass ? "PASS" : "FAIL", r.id.c_str(), r.measured,
                r.threshold, r.note.empty() ? "" : "  # ",
                r.note.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-fermion linear-statistics laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // <binary> <subcommand> --config <path> [...]

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed_override = 0;
  bool seed_given = false;

  app.add_option("--config", config_path, "experiment config file")
      ->required();
  app.add_option("--out", out_dir, "output directory (default from config)");
  auto* seed_opt =
      app.add_option("--seed", seed_override, "override the sampler seed");

  std::vector<std::string> subs = {"spectrum", "variance", "clt",   "sample",
                                   "szego",    "toeplitz", "multicut", "all"};
  for (const auto& s : subs) app.add_subcommand(s, "");

  CLI11_PARSE(app, argc, argv);
  seed_given = seed_opt->count() > 0;
  std::string sub = app.get_subcommands().front()->get_name();

  ff::ExperimentConfig cfg;
  try {
    cfg = ff::parse_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }
  if (seed_given && cfg.sampler) cfg.sampler->seed = seed_override;
  if (out_dir.empty()) out_dir = cfg.out_dir;

  try {
    std::vector<ff::RunResult> results;
    if (sub == "spectrum") results.push_back(ff::run_spectrum(cfg, out_dir));
    else if (sub == "variance") results.push_back(ff::run_variance(cfg, out_dir));
    else if (sub == "clt") results.push_back(ff::run_clt(cfg, out_dir));
    else if (sub == "szego") results.push_back(ff::run_szego(cfg, out_dir));
    else if (sub == "toeplitz") results.push_back(ff::run_toeplitz(cfg, out_dir));
    else if (sub == "sample") results.push_back(ff::run_sample(cfg, out_dir));
    else if (sub == "multicut") results.push_back(ff::run_multicut(cfg, out_dir));
    else results = ff::run_all(cfg, out_dir);

    bool ok = true;
    for (const auto& res : results) {
      ff::write_summary(res, out_dir);
      print_result(res);
      ok = ok && res.all_pass();
    }
    return ok ? 0 : 3;
  } catch (const ff::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const ff::Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
