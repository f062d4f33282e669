#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ff/potential.hpp"
#include "ff/test_function.hpp"

namespace ff {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

/// Key/value view of one [section] of the config file.
class Section {
 public:
  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<int> get_ints(const std::string& key) const;

  std::map<std::string, std::string> kv_;
};

/// Validated experiment description. Sections [experiment], [potential],
/// [domain], [spectral], [sweep], [test_functions] are required; the
/// subcommand-specific sections are optional and validated when present.
struct ExperimentConfig {
  std::string name;
  Potential potential;
  std::string potential_kind;

  double x_min = 0.0, x_max = 0.0;
  double mu = 0.0;
  double mu_max = 0.0;
  double lambda_cap_margin = 0.6;

  std::vector<double> hbar_list;  // strictly decreasing
  std::vector<int> n_list;        // aligned with hbar_list

  TestFunction f_variance;
  TestFunction f_clt;
  TestFunction f_cumulant;

  // [spectrum]
  struct Spectrum {
    double hbar = 0.0;
    double x_min = 0.0, x_max = 0.0;
    int n = 0;
    int levels = 0;
  };
  std::optional<Spectrum> spectrum;

  // [sampler]
  struct Sampler {
    std::uint64_t seed = 0;
    int n_samples = 0;
    double hbar = 0.0;
    int n = 0;
    double counting_hbar = 0.0;
    int counting_n = 0;
    int counting_samples = 0;
    std::vector<double> probes;
  };
  std::optional<Sampler> sampler;

  // [toeplitz]
  struct Toeplitz {
    int band = 2;
    std::vector<double> hbar_list;
    std::vector<int> n_list;
  };
  std::optional<Toeplitz> toeplitz;

  // [multicut]
  struct Multicut {
    double eps = 0.0;
    int draws = 0;
    double eta = 0.2;
    int n = 0;
    int ell = 2;
    std::vector<double> scan_hbar_list;
    double decomp_hbar = 0.0;
    std::vector<double> sweep_hbar_list;
  };
  std::optional<Multicut> multicut;

  // [szego]
  std::vector<int> cue_sizes;

  std::string out_dir = "out";

  ExperimentConfig()
      : potential(Potential::harmonic()),
        f_variance(TestFunction::polynomial({0.0})),
        f_clt(TestFunction::polynomial({0.0})),
        f_cumulant(TestFunction::polynomial({0.0})) {}
};

/// Parses a TestFunction spec string: "poly c0 c1 ...",
/// "wpoly c0 c1 ... | plateau support", "bump amp center width".
TestFunction parse_test_function(const std::string& spec);

/// Parses and validates; throws ConfigError with a line-anchored message.
ExperimentConfig parse_config(const std::string& path);

/// Raw section map (used by parse_config; exposed for diagnostics).
std::map<std::string, Section> parse_ini(const std::string& path);

}  // namespace ff
