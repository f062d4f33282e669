#include "ff/experiments.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "ff/determinantal.hpp"
#include "ff/dhk.hpp"
#include "ff/errors.hpp"
#include "ff/io_util.hpp"
#include "ff/multicut.hpp"
#include "ff/reference_models.hpp"
#include "ff/rng.hpp"
#include "ff/sampling.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace ff {

namespace {

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

std::string subdir(const std::string& out_dir, const std::string& sub) {
  if (out_dir.empty()) return {};
  fs::path p = fs::path(out_dir) / sub;
  fs::create_directories(p);
  return p.string();
}

void write_metadata(const std::string& dir, const std::string& sub) {
  if (dir.empty()) return;
  json md;
  md["subcommand"] = sub;
  md["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  std::ofstream(fs::path(dir) / "metadata.json") << md.dump(2) << "\n";
}

std::shared_ptr<const SpectralDecomposition> solve(
    const Potential& V, double x_min, double x_max, int n, double hbar,
    double mu_max, double lambda_cap) {
  Grid g = build_grid(x_min, x_max, n);
  auto H = discretize_hamiltonian(g, V, hbar, mu_max);
  return std::make_shared<const SpectralDecomposition>(
      eigendecompose(H, lambda_cap));
}

CriterionRow row_lt(const std::string& id, double measured, double threshold,
                    const std::string& note = "") {
  return {id, measured, threshold, measured < threshold, note};
}

CriterionRow row_le(const std::string& id, double measured, double threshold,
                    const std::string& note = "") {
  return {id, measured, threshold, measured <= threshold, note};
}

CriterionRow row_gt(const std::string& id, double measured, double threshold,
                    const std::string& note = "") {
  return {id, measured, threshold, measured > threshold, note};
}

// max ratio err_{i+1}/err_i along a sweep; < 1 means strictly decreasing
double max_consecutive_ratio(const std::vector<double>& errs) {
  double worst = 0.0;
  for (std::size_t i = 1; i < errs.size(); ++i)
    worst = std::max(worst, errs[i] / std::max(errs[i - 1], 1e-300));
  return worst;
}

struct ClassicalTrio {
  double fourier = 0.0, devinatz = 0.0, gff = 0.0;
  double max_gap() const {
    double g1 = std::abs(fourier - devinatz);
    double g2 = std::abs(fourier - gff);
    double g3 = std::abs(devinatz - gff);
    return std::max({g1, g2, g3});
  }
};

ClassicalTrio classical_trio(const TestFunction& f, const Potential& V,
                             double mu) {
  ClassicalTrio t;
  t.fourier = predicted_variance_fourier(f, V, mu);
  t.devinatz = devinatz_variance(f, V, mu);
  t.gff = gff_variance(f, V, mu);
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

RunResult run_spectrum(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
  Timer timer;
  RunResult res;
  res.subcommand = "spectrum";
  std::string dir = subdir(out_dir, "spectrum");

  if (cfg.spectrum) {
    const auto& sc = *cfg.spectrum;
    auto dec = solve(cfg.potential, sc.x_min, sc.x_max, sc.n, sc.hbar,
                     cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
    auto dec2 = solve(cfg.potential, sc.x_min, sc.x_max, 2 * sc.n + 1, sc.hbar,
                      cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
    if (cfg.potential_kind == "harmonic") {
      double err = 0.0, err2 = 0.0;
      for (int k = 0; k < sc.levels; ++k) {
        double exact = (2.0 * k + 1.0) * sc.hbar;
        err = std::max(err, std::abs(dec->eigenvalues[k] - exact));
        err2 = std::max(err2, std::abs(dec2->eigenvalues[k] - exact));
      }
      res.rows.push_back(row_lt("harmonic_spectrum_error", err, 1e-4));
      res.rows.push_back(row_gt("harmonic_spectrum_refinement", err / err2,
                                3.0, "error drop when n doubles (~4x)"));
    }
    if (!dir.empty()) {
      CsvWriter csv(fs::path(dir) / "spectrum_levels.csv", {"j", "lambda"});
      for (int j = 0; j < dec->count(); ++j)
        csv.row({static_cast<double>(j), dec->eigenvalues[j]});
      // eigenfunction samples as a separate matrix file
      std::ofstream mat(fs::path(dir) / "spectrum_eigenfunctions.csv");
      for (int i = 0; i < dec->grid.n; ++i) {
        mat << fmt17(dec->grid.points[i]);
        for (int j = 0; j < std::min(dec->count(), sc.levels); ++j)
          mat << "," << fmt17(dec->eigenfunctions(i, j));
        mat << "\n";
      }
    }
  }

  // rank vs Weyl/action across the sweep
  double worst = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (!dir.empty())
    csv = std::make_unique<CsvWriter>(fs::path(dir) / "rank_weyl.csv",
                                      std::vector<std::string>{
                                          "hbar", "n", "rank", "weyl"});
  for (std::size_t i = 0; i < cfg.hbar_list.size(); ++i) {
    double hbar = cfg.hbar_list[i];
    auto dec = solve(cfg.potential, cfg.x_min, cfg.x_max, cfg.n_list[i], hbar,
                     cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
    int N = 0;
    for (double lam : dec->eigenvalues)
      if (lam <= cfg.mu) ++N;
    double weyl = weyl_count(cfg.potential, cfg.mu, hbar);
    worst = std::max(worst, std::abs(N - weyl));
    if (csv)
      csv->row({hbar, static_cast<double>(cfg.n_list[i]),
                static_cast<double>(N), weyl});
  }
  res.rows.push_back(row_le("rank_weyl", worst, 2.0));
  res.rows.push_back(row_lt("spectrum_runtime_s", timer.seconds(), 30.0));
  write_metadata(dir, "spectrum");
  return res;
}

// ---------------------------------------------------------------------------
// variance
// ---------------------------------------------------------------------------

RunResult run_variance(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
  Timer timer;
  RunResult res;
  res.subcommand = "variance";
  std::string dir = subdir(out_dir, "variance");

  ClassicalTrio trio = classical_trio(cfg.f_variance, cfg.potential, cfg.mu);
  res.rows.push_back(row_lt("variance_routes_agree", trio.max_gap(), 1e-4));

  std::vector<double> errs;
  std::unique_ptr<CsvWriter> csv;
  if (!dir.empty())
    csv = std::make_unique<CsvWriter>(
        fs::path(dir) / "variance_sweep.csv",
        std::vector<std::string>{"hbar", "n", "N", "var_exact",
                                 "sigma2_fourier", "sigma2_devinatz",
                                 "sigma2_gff", "abs_err"});
  double var_finest = 0.0;
  for (std::size_t i = 0; i < cfg.hbar_list.size(); ++i) {
    double hbar = cfg.hbar_list[i];
    auto dec = solve(cfg.potential, cfg.x_min, cfg.x_max, cfg.n_list[i], hbar,
                     cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
    Projector P = spectral_projector(dec, cfg.mu);
    double var = exact_variance(P, cfg.f_variance);
    var_finest = var;
    errs.push_back(std::abs(var - trio.fourier));
    if (csv)
      csv->row({hbar, static_cast<double>(cfg.n_list[i]),
                static_cast<double>(P.rank()), var, trio.fourier,
                trio.devinatz, trio.gff, errs.back()});
  }
  res.rows.push_back(row_lt("variance_exact_rel_err",
                            std::abs(var_finest - trio.fourier) /
                                std::max(trio.fourier, 1e-300),
                            0.02, "finest hbar vs classical prediction"));
  res.rows.push_back(row_lt("variance_sweep_decreasing",
                            max_consecutive_ratio(errs), 1.0,
                            "max err ratio along the hbar sweep"));
  res.rows.push_back(row_lt("variance_runtime_s", timer.seconds(), 120.0));
  write_metadata(dir, "variance");
  return res;
}

// ---------------------------------------------------------------------------
// clt
// ---------------------------------------------------------------------------

RunResult run_clt(const ExperimentConfig& cfg, const std::string& out_dir) {
  Timer timer;
  RunResult res;
  res.subcommand = "clt";
  std::string dir = subdir(out_dir, "clt");

  ClassicalTrio trio_clt = classical_trio(cfg.f_clt, cfg.potential, cfg.mu);

  std::vector<double> residuals, k3s, k4s;
  json reports = json::array();
  std::unique_ptr<CsvWriter> csv;
  if (!dir.empty())
    csv = std::make_unique<CsvWriter>(
        fs::path(dir) / "clt_sweep.csv",
        std::vector<std::string>{"hbar", "N", "k1", "k2", "k3", "k4",
                                 "sigma2_fourier", "sigma2_devinatz",
                                 "sigma2_gff", "szego_residual"});

  std::shared_ptr<const SpectralDecomposition> finest_dec;
  double k2_rel_gap = 0.0;
  for (std::size_t i = 0; i < cfg.hbar_list.size(); ++i) {
    double hbar = cfg.hbar_list[i];
    auto dec = solve(cfg.potential, cfg.x_min, cfg.x_max, cfg.n_list[i], hbar,
                     cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
    finest_dec = dec;
    Projector P = spectral_projector(dec, cfg.mu);

    Cumulants kc = cumulants(P, cfg.f_clt);
    double resid = szego_residual(P, cfg.f_clt, kc.k1, trio_clt.fourier);
    residuals.push_back(resid);

    Cumulants kb = cumulants(P, cfg.f_cumulant);
    k3s.push_back(std::abs(kb.k3));
    k4s.push_back(std::abs(kb.k4));
    k2_rel_gap = std::abs(kb.k2_fd - kb.k2_exact) /
                 std::max(kb.k2_exact, 1e-300);

    if (csv)
      csv->row({hbar, static_cast<double>(P.rank()), kc.k1, kc.k2_exact,
                kc.k3, kc.k4, trio_clt.fourier, trio_clt.devinatz,
                trio_clt.gff, resid});
    json jr;
    jr["hbar"] = hbar;
    jr["f"] = cfg.f_clt.id();
    jr["k1"] = kc.k1;
    jr["k2_exact"] = kc.k2_exact;
    jr["k2_fd"] = kc.k2_fd;
    jr["k3"] = kc.k3;
    jr["k4"] = kc.k4;
    jr["k3_err_est"] = kc.k3_err;
    jr["k4_err_est"] = kc.k4_err;
    jr["sigma2_fourier"] = trio_clt.fourier;
    jr["sigma2_devinatz"] = trio_clt.devinatz;
    jr["sigma2_gff"] = trio_clt.gff;
    jr["szego_residual"] = resid;
    reports.push_back(jr);
  }

  res.rows.push_back(row_lt("szego_residual", residuals.back(), 5e-3));
  res.rows.push_back(row_lt("szego_residual_decreasing",
                            max_consecutive_ratio(residuals), 1.0));
  res.rows.push_back(row_lt("cumulant_k3", k3s.back(), 1e-3));
  res.rows.push_back(row_lt("cumulant_k4", k4s.back(), 1e-2));
  res.rows.push_back(
      row_lt("cumulant_k3_shrinking", max_consecutive_ratio(k3s), 1.0));
  res.rows.push_back(
      row_lt("cumulant_k4_shrinking", max_consecutive_ratio(k4s), 1.0));
  res.rows.push_back(row_lt("cumulant_k2_consistency", k2_rel_gap, 1e-4));

  // DHK combinatorial identity (exact integers)
  {
    bool ok = true;
    long tuples = 0;
    for (int n = 2; n <= 6; ++n) {
      auto r = dhk_check(n, 3);
      ok = ok && r.ok;
      tuples += r.tuples_checked;
    }
    res.rows.push_back({"dhk_identity", ok ? 0.0 : 1.0, 0.5, ok,
                        std::to_string(tuples) + " tuples"});
  }

  // Upsilon expansion at the finest hbar: series consistency + bound
  {
    Projector P = spectral_projector(finest_dec, cfg.mu);
    const Grid& g = finest_dec->grid;
    const double eta = 0.3;
    std::vector<double> a(g.n);
    for (int i = 0; i < g.n; ++i)
      a[i] = std::exp(eta * cfg.f_clt(g.points[i])) - 1.0;
    UpsilonSeries ups = upsilon_coefficients(P, a, 40);
    double k1 = linear_statistic_mean(P, cfg.f_clt);
    double target = log_laplace(P, cfg.f_clt, eta).real() - eta * k1;
    res.rows.push_back(row_lt("upsilon_series_consistency",
                              std::abs(ups.sum() - target), 1e-8,
                              "tail energy " + fmt17(ups.tail_energy)));
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < ups.coeffs.size(); ++i) {
      int n = static_cast<int>(i) + 2;
      if (n > 8) break;
      double bound = 0.25 * n * (n - 1) * ups.comm_hs2 *
                     std::pow(ups.rho, n - 2);
      worst_ratio =
          std::max(worst_ratio, std::abs(ups.coeffs[i]) / (bound + 1e-300));
    }
    res.rows.push_back(row_le("upsilon_bound", worst_ratio, 1.0,
                              "max |Upsilon_n| / Fredholm bound, n <= 8"));
  }

  res.rows.push_back(row_lt("clt_runtime_s", timer.seconds(), 300.0));
  if (!dir.empty())
    std::ofstream(fs::path(dir) / "cumulants.json") << reports.dump(2) << "\n";
  write_metadata(dir, "clt");
  return res;
}

// ---------------------------------------------------------------------------
// szego (CUE reference)
// ---------------------------------------------------------------------------

RunResult run_szego(const ExperimentConfig& cfg, const std::string& out_dir) {
  RunResult res;
  res.subcommand = "szego";
  std::string dir = subdir(out_dir, "szego");

  auto f = [](double th) { return 2.0 * std::cos(th); };
  CircleSymbol sym = CircleSymbol::from_function(f, 16);
  double f0 = sym.coeff(0).real();
  double rhs = szego_rhs(sym);

  std::vector<int> sizes = cfg.cue_sizes;
  if (sizes.empty()) sizes = {32, 64, 128, 256};
  std::vector<double> resids;
  std::unique_ptr<CsvWriter> csv;
  if (!dir.empty())
    csv = std::make_unique<CsvWriter>(
        fs::path(dir) / "szego_sweep.csv",
        std::vector<std::string>{"N", "log_det", "asymptotic", "residual"});
  for (int N : sizes) {
    double ld = toeplitz_log_det(sym, N);
    double asym = N * f0 + rhs;
    resids.push_back(std::abs(ld - asym));
    if (csv) csv->row({static_cast<double>(N), ld, asym, resids.back()});
  }
  res.rows.push_back(row_lt("strong_szego_residual", resids.back(), 1e-6,
                            "N = " + std::to_string(sizes.back())));
  // the analytic symbol converges super-exponentially, so residuals sit at
  // the roundoff floor for every shipped N; monotonicity is only meaningful
  // above that floor
  {
    const double floor = 1e-12;
    double worst = 0.0;
    for (std::size_t i = 1; i < resids.size(); ++i)
      if (std::max(resids[i - 1], resids[i]) > floor)
        worst = std::max(worst,
                         resids[i] / std::max(resids[i - 1], 1e-300));
    res.rows.push_back(row_lt("strong_szego_monotone", worst, 1.0,
                              "steps below the 1e-12 roundoff floor exempt"));
  }
  // Fredholm-form identity via the explicit Fourier-mode projector
  double ld64 = toeplitz_log_det(sym, 64);
  double pl64 = cue_projector_log_laplace(f, 64);
  res.rows.push_back(
      row_lt("cue_projector_consistency", std::abs(ld64 - pl64), 1e-8));

  write_metadata(dir, "szego");
  return res;
}

// ---------------------------------------------------------------------------
// toeplitz (matrix-element deviation)
// ---------------------------------------------------------------------------

RunResult run_toeplitz(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
  RunResult res;
  res.subcommand = "toeplitz";
  std::string dir = subdir(out_dir, "toeplitz");
  if (!cfg.toeplitz) {
    res.rows.push_back({"toeplitz_config", 1.0, 0.5, false,
                        "[toeplitz] section missing"});
    return res;
  }
  const auto& tc = *cfg.toeplitz;
  std::vector<double> devs;
  std::unique_ptr<CsvWriter> csv;
  if (!dir.empty())
    csv = std::make_unique<CsvWriter>(fs::path(dir) / "toeplitz.csv",
                                      std::vector<std::string>{
                                          "hbar", "n", "deviation"});
  for (std::size_t i = 0; i < tc.hbar_list.size(); ++i) {
    auto dec = solve(cfg.potential, cfg.x_min, cfg.x_max, tc.n_list[i],
                     tc.hbar_list[i], cfg.mu_max,
                     cfg.mu + cfg.lambda_cap_margin);
    double dev =
        toeplitz_deviation(*dec, cfg.f_variance, cfg.potential, cfg.mu,
                           tc.band);
    devs.push_back(dev);
    if (csv)
      csv->row({tc.hbar_list[i], static_cast<double>(tc.n_list[i]), dev});
  }
  res.rows.push_back(row_lt("toeplitz_deviation", devs.front(), 0.02,
                            "hbar = " + fmt17(tc.hbar_list.front())));
  if (devs.size() >= 2) {
    double ratio = devs[1] / std::max(devs[0], 1e-300);
    res.rows.push_back(row_le("toeplitz_halving", std::abs(ratio - 0.5), 0.15,
                              "|dev ratio - 1/2| when hbar halves"));
  }
  write_metadata(dir, "toeplitz");
  return res;
}

// ---------------------------------------------------------------------------
// sample (Monte Carlo)
// ---------------------------------------------------------------------------

RunResult run_sample(const ExperimentConfig& cfg, const std::string& out_dir) {
  Timer timer;
  RunResult res;
  res.subcommand = "sample";
  std::string dir = subdir(out_dir, "sample");
  if (!cfg.sampler) {
    res.rows.push_back({"sampler_config", 1.0, 0.5, false,
                        "[sampler] section missing"});
    return res;
  }
  const auto& sc = *cfg.sampler;

  auto dec = solve(cfg.potential, cfg.x_min, cfg.x_max, sc.n, sc.hbar,
                   cfg.mu_max, cfg.mu + cfg.lambda_cap_margin);
  Projector P = spectral_projector(dec, cfg.mu);
  double sigma2 = predicted_variance_fourier(cfg.f_variance, cfg.potential,
                                             cfg.mu);
  SampleBatch batch = generate_batch(P, sc.seed, sc.n_samples);
  MomentReport mr = monte_carlo_clt(P, cfg.f_variance, batch, sigma2);

  // z of the empirical variance against the exact finite-hbar variance
  double var_exact = exact_variance(P, cfg.f_variance);
  double z_var = (mr.variance - var_exact) / std::max(mr.se_variance, 1e-300);
  res.rows.push_back(row_lt("sampler_variance_z", std::abs(z_var), 3.0,
                            "vs exact_variance"));
  res.rows.push_back(
      row_lt("sampler_skewness_z", std::abs(mr.z_skewness), 3.0));
  res.rows.push_back(
      row_lt("sampler_kurtosis_z", std::abs(mr.z_kurtosis), 3.0));

  // exact counting covariance vs the log-correlated kernel
  auto dec2 = solve(cfg.potential, cfg.x_min, cfg.x_max, sc.counting_n,
                    sc.counting_hbar, cfg.mu_max,
                    cfg.mu + cfg.lambda_cap_margin);
  Projector P2 = spectral_projector(dec2, cfg.mu);
  double p0 = sc.probes.at(0), p1 = sc.probes.at(1);
  double cov = counting_covariance(P2, p0, p1);
  double kernel = gff_kernel(cfg.potential, cfg.mu, p0, p1);
  res.rows.push_back(row_lt(
      "counting_covariance",
      std::abs(2.0 * M_PI * M_PI * cov / kernel - 1.0), 0.05,
      "2 pi^2 Cov vs kernel " + fmt17(kernel)));

  // empirical counting field on a smaller batch
  {
    SampleBatch cb = generate_batch(P2, sc.seed + 1, sc.counting_samples);
    CountingFieldEstimate est = empirical_counting_field(P2, cb, sc.probes);
    double worst_z = 0.0;
    for (std::size_t p = 0; p < sc.probes.size(); ++p)
      for (std::size_t q = 0; q < sc.probes.size(); ++q) {
        double exact = counting_covariance(P2, sc.probes[p], sc.probes[q]);
        double z = (est.covariance(p, q) - exact) /
                   std::max(est.jackknife_se(p, q), 1e-300);
        worst_z = std::max(worst_z, std::abs(z));
      }
    res.rows.push_back(
        row_lt("counting_field_exact_z", worst_z, 3.0, "jackknife units"));
    double emp = est.covariance(0, 1);
    res.rows.push_back(row_lt("counting_field_gff",
                              std::abs(2.0 * M_PI * M_PI * emp / kernel - 1.0),
                              0.10));
  }

  if (!dir.empty()) {
    // batch CSV: (sample_id, point list)
    CsvWriter csv(fs::path(dir) / "samples.csv", {"sample_id", "points"});
    const auto& g = P.grid();
    for (int s = 0; s < batch.n_samples; ++s) {
      std::string pts;
      for (int idx : batch.configurations[s]) {
        if (!pts.empty()) pts += " ";
        pts += fmt17(g.points[idx]);
      }
      csv.raw_row({std::to_string(s), pts});
    }
    json jr;
    jr["n_samples"] = mr.n_samples;
    jr["mean"] = mr.mean;
    jr["variance"] = mr.variance;
    jr["skewness"] = mr.skewness;
    jr["excess_kurtosis"] = mr.excess_kurtosis;
    jr["se"] = {mr.se_mean, mr.se_variance, mr.se_skewness, mr.se_kurtosis};
    jr["z"] = {mr.z_mean, z_var, mr.z_skewness, mr.z_kurtosis};
    jr["targets"] = {mr.target_mean, mr.target_variance};
    std::ofstream(fs::path(dir) / "moments.json") << jr.dump(2) << "\n";
  }
  res.rows.push_back(row_lt("sample_runtime_s", timer.seconds(), 600.0));
  write_metadata(dir, "sample");
  return res;
}

// ---------------------------------------------------------------------------
// multicut
// ---------------------------------------------------------------------------

RunResult run_multicut(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
  Timer timer;
  RunResult res;
  res.subcommand = "multicut";
  std::string dir = subdir(out_dir, "multicut");
  if (!cfg.multicut) {
    res.rows.push_back({"multicut_config", 1.0, 0.5, false,
                        "[multicut] section missing"});
    return res;
  }
  const auto& mc = *cfg.multicut;
  const std::uint64_t seed = cfg.sampler ? cfg.sampler->seed : 20240901ull;
  Grid grid = build_grid(cfg.x_min, cfg.x_max, mc.n);

  ResonanceScan scan = resonance_scan(cfg.potential, grid, cfg.mu, mc.eps,
                                      mc.ell, mc.scan_hbar_list, mc.draws,
                                      seed);
  // pass rate at the criterion's hbar (first scan entry matching 0.02, else
  // the last)
  std::size_t idx02 = scan.hbars.size() - 1;
  for (std::size_t i = 0; i < scan.hbars.size(); ++i)
    if (std::abs(scan.hbars[i] - 0.02) < 1e-12) idx02 = i;
  res.rows.push_back(row_gt("multicut_pass_rate", scan.pass_rate[idx02], 0.95,
                            "hbar = " + fmt17(scan.hbars[idx02])));
  double min_step = 0.0;
  for (std::size_t i = 1; i < scan.pass_rate.size(); ++i)
    min_step = std::min(min_step, scan.pass_rate[i] - scan.pass_rate[i - 1]);
  res.rows.push_back({"multicut_pass_rate_monotone", min_step, 0.0,
                      min_step >= 0.0, "min rate step as hbar decreases"});

  // symmetric w = 0 family must fail separation
  {
    std::vector<double> w0(mc.ell, 0.0);
    WellFamily fam = build_well_family(cfg.potential, grid, cfg.mu, w0,
                                       mc.eps);
    bool sym_pass = separation_report(fam, mc.decomp_hbar).pass();
    res.rows.push_back({"multicut_symmetric_fails", sym_pass ? 1.0 : 0.0, 0.5,
                        !sym_pass, "w = 0 tunneling degeneracy"});
  }

  // decomposition checks on passing draws at decomp_hbar; streams reuse the
  // matching scan index so CSV rows and decomposition columns line up
  auto draw_weights = [&](std::uint64_t tag, int d) {
    CounterRng rng(seed, (tag << 32) | static_cast<std::uint64_t>(d));
    std::vector<double> w(mc.ell);
    for (int j = 0; j < mc.ell; ++j) w[j] = rng.uniform(-mc.eps, mc.eps);
    return w;
  };
  std::size_t decomp_scan_idx = idx02;
  for (std::size_t i = 0; i < scan.hbars.size(); ++i)
    if (std::abs(scan.hbars[i] - mc.decomp_hbar) < 1e-12) decomp_scan_idx = i;

  double worst_kernel = 0.0, worst_vargap = 0.0, worst_llgap = 0.0;
  bool ranks_ok = true;
  int tested = 0;
  std::map<int, DecompositionError> per_draw_err;
  std::map<int, MulticutVarianceReport> per_draw_var;
  for (int d = 0; d < mc.draws && tested < 5; ++d) {
    std::vector<double> w = draw_weights(decomp_scan_idx, d);
    try {
      WellFamily fam = build_well_family(cfg.potential, grid, cfg.mu, w,
                                         mc.eps);
      DecompositionError de = projector_decomposition_error(fam,
                                                            mc.decomp_hbar);
      MulticutVarianceReport vr = multicut_variance_check(fam, mc.decomp_hbar,
                                                          cfg.f_variance,
                                                          mc.eta);
      worst_kernel = std::max(worst_kernel, de.kernel_frobenius);
      ranks_ok = ranks_ok && de.rank_additive;
      worst_vargap = std::max(
          worst_vargap, std::abs(vr.var_full - vr.sigma2_sum_classical) /
                            std::max(vr.var_full, 1e-300));
      worst_llgap = std::max(
          worst_llgap, std::abs(vr.log_laplace_full - vr.log_laplace_sum));
      per_draw_err[d] = de;
      per_draw_var[d] = vr;
      ++tested;
    } catch (const SeparationFailed&) {
      continue;
    }
  }
  res.rows.push_back(row_lt("multicut_kernel_error", worst_kernel, 1e-6,
                            "hbar = " + fmt17(mc.decomp_hbar) +
                                "; geometrically limited to ~1e-2 here, see "
                                "README"));
  res.rows.push_back({"multicut_rank_additive", ranks_ok ? 0.0 : 1.0, 0.5,
                      ranks_ok, std::to_string(tested) + " passing draws"});
  res.rows.push_back(row_lt("multicut_variance_additivity", worst_vargap,
                            0.03));
  res.rows.push_back(row_lt("multicut_loglaplace_additivity", worst_llgap,
                            1e-6, "eta = " + fmt17(mc.eta)));

  // super-polynomial decay of the decomposition error along the hbar sweep:
  // one generic family that passes separation at every sweep hbar
  std::vector<double> decay;
  for (int d = 0; d < mc.draws && decay.empty(); ++d) {
    std::vector<double> w = draw_weights(0xDECAull, d);
    try {
      WellFamily fam = build_well_family(cfg.potential, grid, cfg.mu, w,
                                         mc.eps);
      std::vector<double> errs;
      for (double hb : mc.sweep_hbar_list)
        errs.push_back(projector_decomposition_error(fam, hb).kernel_frobenius);
      decay = std::move(errs);
    } catch (const SeparationFailed&) {
      continue;
    }
  }
  if (decay.size() >= 2)
    res.rows.push_back(row_le("multicut_error_decay",
                              max_consecutive_ratio(decay), 1.0,
                              "kernel error along the hbar sweep"));

  if (!dir.empty()) {
    CsvWriter csv(fs::path(dir) / "multicut_scan.csv",
                  {"hbar", "draw_id", "pass", "min_gap", "dist_mu",
                   "decomposition_error", "variance_gap"});
    for (const auto& row : scan.rows) {
      std::vector<std::string> cells = {
          fmt17(row.hbar), std::to_string(row.draw),
          row.pass ? "1" : "0", fmt17(row.min_cross_gap),
          fmt17(row.min_dist_mu), "", ""};
      if (std::abs(row.hbar - mc.decomp_hbar) < 1e-12) {
        auto it = per_draw_err.find(row.draw);
        if (it != per_draw_err.end()) {
          cells[5] = fmt17(it->second.kernel_frobenius);
          cells[6] = fmt17(std::abs(per_draw_var[row.draw].var_full -
                                    per_draw_var[row.draw]
                                        .sigma2_sum_classical));
        }
      }
      csv.raw_row(cells);
    }
  }
  res.rows.push_back(row_lt("multicut_runtime_s", timer.seconds(), 600.0));
  write_metadata(dir, "multicut");
  return res;
}

std::vector<RunResult> run_all(const ExperimentConfig& cfg,
                               const std::string& out_dir) {
  std::vector<RunResult> all;
  all.push_back(run_spectrum(cfg, out_dir));
  all.push_back(run_variance(cfg, out_dir));
  all.push_back(run_clt(cfg, out_dir));
  if (!cfg.cue_sizes.empty()) all.push_back(run_szego(cfg, out_dir));
  if (cfg.toeplitz) all.push_back(run_toeplitz(cfg, out_dir));
  if (cfg.sampler) all.push_back(run_sample(cfg, out_dir));
  if (cfg.multicut) all.push_back(run_multicut(cfg, out_dir));
  return all;
}

void write_summary(const RunResult& res, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::string dir = subdir(out_dir, res.subcommand);
  json j;
  j["subcommand"] = res.subcommand;
  j["criteria"] = json::array();
  for (const auto& r : res.rows) {
    json c;
    c["criterion_id"] = r.id;
    c["measured"] = r.measured;
    c["threshold"] = r.threshold;
    c["pass"] = r.pass;
    if (!r.note.empty()) c["note"] = r.note;
    j["criteria"].push_back(c);
  }
  std::ofstream(fs::path(dir) / "summary.json") << j.dump(2) << "\n";
}

}  // namespace ff
