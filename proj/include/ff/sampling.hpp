#pragma once

#include <cstdint>
#include <vector>

#include "ff/spectral.hpp"
#include "ff/test_function.hpp"

namespace ff {

/// One exact draw from the projection DPP induced on the grid. Sequential
/// conditional sampling: draw a point from the normalized kernel diagonal,
/// project the kernel onto the orthocomplement of the drawn point, repeat.
/// Returns exactly rank(P) grid indices, sorted ascending.
std::vector<int> sample_dpp(const Projector& P, std::uint64_t seed,
                            std::uint64_t stream = 0);

struct SampleBatch {
  std::uint64_t seed = 0;
  int n_samples = 0;
  std::vector<std::vector<int>> configurations;  // grid indices per draw
};

/// n_samples independent draws; draw s uses the counter stream (seed, s), so
/// batches are reproducible and trivially parallel.
SampleBatch generate_batch(const Projector& P, std::uint64_t seed,
                           int n_samples);

struct MomentReport {
  int n_samples = 0;
  double mean = 0.0, variance = 0.0, skewness = 0.0, excess_kurtosis = 0.0;
  double se_mean = 0.0, se_variance = 0.0, se_skewness = 0.0, se_kurtosis = 0.0;
  double z_mean = 0.0, z_variance = 0.0, z_skewness = 0.0, z_kurtosis = 0.0;
  double target_mean = 0.0, target_variance = 0.0;
};

/// Empirical moments of X(f) with bootstrap standard errors and z-scores
/// against (k1 exact, sigma2_target, 0, 0).
MomentReport monte_carlo_clt(const Projector& P, const TestFunction& f,
                             int n_samples, std::uint64_t seed,
                             double sigma2_target);

/// Same moments computed from an existing batch.
MomentReport monte_carlo_clt(const Projector& P, const TestFunction& f,
                             const SampleBatch& batch, double sigma2_target);

struct CountingFieldEstimate {
  std::vector<double> probes;
  Eigen::MatrixXd covariance;   // empirical Cov(h(x_p), h(x_q))
  Eigen::MatrixXd jackknife_se;
};

/// Empirical covariance of the counting function h(x) = #{points <= x} at the
/// probe positions, with leave-one-out jackknife errors.
CountingFieldEstimate empirical_counting_field(const Projector& P,
                                               const SampleBatch& batch,
                                               const std::vector<double>& probes);

}  // namespace ff
