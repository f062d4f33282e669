#pragma once

#include <string>
#include <vector>

#include "ff/config.hpp"

namespace ff {

/// One pass/fail line of a subcommand summary; `measured` compared against
/// `threshold` with the direction encoded in `pass` at evaluation time.
struct CriterionRow {
  std::string id;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct RunResult {
  std::string subcommand;
  std::vector<CriterionRow> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Subcommand runners. out_dir empty = compute only, no artifacts. Each
/// writes CSV/JSON artifacts under <out_dir>/<subcommand>/ plus summary.json
/// and a separate metadata.json (timestamps never enter the CSV bodies).
RunResult run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_variance(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_clt(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_szego(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_toeplitz(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_sample(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_multicut(const ExperimentConfig& cfg, const std::string& out_dir);

/// Runs every subcommand whose config section is present.
std::vector<RunResult> run_all(const ExperimentConfig& cfg,
                               const std::string& out_dir);

/// Writes <out>/<sub>/summary.json for a result.
void write_summary(const RunResult& res, const std::string& out_dir);

}  // namespace ff
