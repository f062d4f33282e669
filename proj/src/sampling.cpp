#include "ff/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/determinantal.hpp"
#include "ff/errors.hpp"
#include "ff/rng.hpp"

namespace ff {

std::vector<int> sample_dpp(const Projector& P, std::uint64_t seed,
                            std::uint64_t stream) {
  const int N = P.rank();
  if (N < 1) throw std::invalid_argument("sample_dpp: empty projector");
  const auto& dec = P.decomposition();
  const int n = dec.grid.n;
  const double dx = dec.grid.dx;
  auto Phi = P.columns();

  CounterRng rng(seed, stream);

  // q_i = residual kernel diagonal times dx (probability mass, sums to N-r)
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = Phi.row(i).squaredNorm() * dx;

  Eigen::MatrixXd W(n, N);  // dx-orthonormal conditioning vectors
  std::vector<int> picks;
  picks.reserve(N);

  auto rebuild_diag = [&](int r) {
    for (int i = 0; i < n; ++i) {
      double s = Phi.row(i).squaredNorm();
      for (int c = 0; c < r; ++c) s -= W(i, c) * W(i, c);
      q[i] = std::max(s * dx, 0.0);
    }
    for (int p : picks) q[p] = 0.0;
  };

  for (int r = 0; r < N; ++r) {
    double total = q.sum();
    // integer-indexed inverse-CDF draw with a fixed left-to-right scan
    double u = rng.next_double() * total;
    int pick = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += q[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }

    // kernel column at the picked point, conditioned on previous picks;
    // W_c lies in range(K), so <W_c, K(., pick)>_dx = W_c(pick)
    Eigen::VectorXd psi = Phi * Phi.row(pick).transpose();
    for (int c = 0; c < r; ++c) psi -= W.col(c) * W(pick, c);
    double nrm2 = psi.squaredNorm() * dx;
    if (nrm2 < 1e-14) throw NumericalDegeneracy(nrm2);
    W.col(r) = psi / std::sqrt(nrm2);
    picks.push_back(pick);

    for (int i = 0; i < n; ++i) q[i] -= W(i, r) * W(i, r) * dx;
    if (q.minCoeff() < -1e-10) {
      rebuild_diag(r + 1);  // re-orthogonalization pass first
      if (q.minCoeff() < -1e-10) throw NumericalDegeneracy(q.minCoeff());
    }
    for (int i = 0; i < n; ++i)
      if (q[i] < 0.0) q[i] = 0.0;
    for (int p : picks) q[p] = 0.0;

    if ((r + 1) % 16 == 0 && r + 1 < N) {
      // periodic modified Gram-Schmidt pass over the conditioning set
      for (int c = 0; c <= r; ++c) {
        Eigen::VectorXd v = W.col(c);
        for (int c2 = 0; c2 < c; ++c2)
          v -= W.col(c2) * (W.col(c2).dot(v) * dx);
        double nv = std::sqrt(v.squaredNorm() * dx);
        if (nv < 1e-14) throw NumericalDegeneracy(nv);
        W.col(c) = v / nv;
      }
      rebuild_diag(r + 1);
    }
  }
  std::sort(picks.begin(), picks.end());
  return picks;
}

SampleBatch generate_batch(const Projector& P, std::uint64_t seed,
                           int n_samples) {
  SampleBatch b;
  b.seed = seed;
  b.n_samples = n_samples;
  b.configurations.resize(n_samples);
  for (int s = 0; s < n_samples; ++s)
    b.configurations[s] = sample_dpp(P, seed, static_cast<std::uint64_t>(s));
  return b;
}

namespace {

struct Moments {
  double mean, var, skew, exkurt;
};

Moments moments_of(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  Moments m;
  m.mean = mean;
  m.var = m2 * n / std::max(1, n - 1);
  m.skew = (m2 > 0) ? m3 / std::pow(m2, 1.5) : 0.0;
  m.exkurt = (m2 > 0) ? m4 / (m2 * m2) - 3.0 : 0.0;
  return m;
}

}  // namespace

MomentReport monte_carlo_clt(const Projector& P, const TestFunction& f,
                             int n_samples, std::uint64_t seed,
                             double sigma2_target) {
  if (n_samples < 1000)
    throw std::invalid_argument("monte_carlo_clt: need n_samples >= 1000");
  return monte_carlo_clt(P, f, generate_batch(P, seed, n_samples),
                         sigma2_target);
}

MomentReport monte_carlo_clt(const Projector& P, const TestFunction& f,
                             const SampleBatch& batch, double sigma2_target) {
  const int n_samples = batch.n_samples;
  const std::uint64_t seed = batch.seed;
  const auto& g = P.grid();

  std::vector<double> X(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    double v = 0.0;
    for (int idx : batch.configurations[s]) v += f(g.points[idx]);
    X[s] = v;
  }

  Moments m = moments_of(X);
  MomentReport r;
  r.n_samples = n_samples;
  r.mean = m.mean;
  r.variance = m.var;
  r.skewness = m.skew;
  r.excess_kurtosis = m.exkurt;

  // bootstrap standard errors (counter streams keyed off the base seed)
  const int B = 200;
  std::vector<double> bm(B), bv(B), bs(B), bk(B);
  std::vector<double> resample(n_samples);
  for (int b = 0; b < B; ++b) {
    CounterRng rng(seed ^ 0x626f6f74ull, static_cast<std::uint64_t>(b));
    for (int s = 0; s < n_samples; ++s) {
      int idx = static_cast<int>(rng.next_u64() % n_samples);
      resample[s] = X[idx];
    }
    Moments mb = moments_of(resample);
    bm[b] = mb.mean;
    bv[b] = mb.var;
    bs[b] = mb.skew;
    bk[b] = mb.exkurt;
  }
  auto sd = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double t : v) mean += t;
    mean /= v.size();
    double s2 = 0.0;
    for (double t : v) s2 += (t - mean) * (t - mean);
    return std::sqrt(s2 / (v.size() - 1));
  };
  r.se_mean = sd(bm);
  r.se_variance = sd(bv);
  r.se_skewness = sd(bs);
  r.se_kurtosis = sd(bk);

  r.target_mean = linear_statistic_mean(P, f);
  r.target_variance = sigma2_target;
  r.z_mean = (r.mean - r.target_mean) / std::max(r.se_mean, 1e-300);
  r.z_variance =
      (r.variance - r.target_variance) / std::max(r.se_variance, 1e-300);
  r.z_skewness = r.skewness / std::max(r.se_skewness, 1e-300);
  r.z_kurtosis = r.excess_kurtosis / std::max(r.se_kurtosis, 1e-300);
  return r;
}

CountingFieldEstimate empirical_counting_field(
    const Projector& P, const SampleBatch& batch,
    const std::vector<double>& probes) {
  const auto& g = P.grid();
  const int np = static_cast<int>(probes.size());
  const int ns = batch.n_samples;
  if (ns < 2)
    throw std::invalid_argument("empirical_counting_field: need >= 2 samples");

  Eigen::MatrixXd H(ns, np);
  for (int s = 0; s < ns; ++s) {
    const auto& cfg = batch.configurations[s];
    for (int p = 0; p < np; ++p) {
      int cnt = 0;
      for (int idx : cfg)
        if (g.points[idx] <= probes[p]) ++cnt;
      H(s, p) = cnt;
    }
  }

  Eigen::RowVectorXd mean = H.colwise().mean();
  Eigen::MatrixXd C = (H.rowwise() - mean).transpose() *
                      (H.rowwise() - mean) / (ns - 1.0);

  // leave-one-out jackknife from the sufficient statistics
  Eigen::MatrixXd se = Eigen::MatrixXd::Zero(np, np);
  Eigen::MatrixXd S2 = H.transpose() * H;  // sum h_p h_q
  Eigen::RowVectorXd S1 = H.colwise().sum();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(np, np);
  Eigen::MatrixXd acc2 = Eigen::MatrixXd::Zero(np, np);
  for (int s = 0; s < ns; ++s) {
    Eigen::RowVectorXd h = H.row(s);
    Eigen::RowVectorXd m1 = (S1 - h) / (ns - 1.0);
    Eigen::MatrixXd s2 = S2 - h.transpose() * h;
    Eigen::MatrixXd Cs =
        (s2 - (ns - 1.0) * m1.transpose() * m1) / (ns - 2.0);
    acc += Cs;
    acc2 += Cs.cwiseProduct(Cs);
  }
  Eigen::MatrixXd mean_loo = acc / ns;
  se = ((acc2 / ns - mean_loo.cwiseProduct(mean_loo)) * (ns - 1.0))
           .cwiseMax(0.0)
           .cwiseSqrt();

  CountingFieldEstimate est;
  est.probes = probes;
  est.covariance = C;
  est.jackknife_se = se;
  return est;
}

}  // namespace ff
