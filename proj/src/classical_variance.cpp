#include "ff/classical_variance.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/errors.hpp"
#include "ff/fft.hpp"

namespace ff {

namespace {

FlowFourier coefficients_from_orbit(const TestFunction& f,
                                    const OrbitData& orb, int K) {
  const int M = static_cast<int>(orb.psi_samples.size());
  std::vector<double> g(M);
  for (int m = 0; m < M; ++m) g[m] = f(orb.psi_samples[m]);
  auto ghat = dft_forward(g);

  FlowFourier out;
  out.action = orb.action;
  out.K = K;
  out.coeffs.resize(2 * K + 1);
  for (int k = -K; k <= K; ++k)
    out.coeffs[k + K] = ghat[(k % M + M) % M];
  out.tail = std::abs(out.coeffs[2 * K]);
  out.truncation_ok = out.tail < 1e-8;
  return out;
}

}  // namespace

FlowFourier flow_fourier_coefficients(const TestFunction& f,
                                      const Potential& V, double lambda,
                                      int K) {
  if (K < 1) throw std::invalid_argument("flow_fourier_coefficients: K < 1");
  int M = 4096;
  while (M < 4 * K) M *= 2;
  OrbitData orb = angle_parametrization(V, lambda, M);
  FlowFourier out = coefficients_from_orbit(f, orb, K);
  // raise K while the tail has not decayed; enlarge the grid when K hits M/2
  while (!out.truncation_ok) {
    if (2 * K <= M / 2) {
      K *= 2;
    } else if (M < 65536) {
      M *= 2;
      K *= 2;
      orb = angle_parametrization(V, lambda, M);
    } else {
      break;  // give up; truncation_ok stays false
    }
    out = coefficients_from_orbit(f, orb, K);
  }
  return out;
}

VarianceResult predicted_variance_fourier_detailed(const TestFunction& f,
                                                   const Potential& V,
                                                   double mu, int K) {
  FlowFourier ff = flow_fourier_coefficients(f, V, mu, K);
  VarianceResult r;
  for (int k = 1; k <= ff.K; ++k) r.value += k * std::norm(ff.a(k));
  // coefficients decay faster than any power; bound the tail by a geometric
  // extension of the last two magnitudes
  double aK = std::abs(ff.a(ff.K));
  double aK1 = std::abs(ff.a(ff.K - 1));
  double q = (aK1 > 0.0) ? std::min(0.9, aK / aK1) : 0.0;
  r.tail_bound = ff.K * aK * aK / std::max(1e-30, 1.0 - q * q);
  return r;
}

double predicted_variance_fourier(const TestFunction& f, const Potential& V,
                                  double mu) {
  return predicted_variance_fourier_detailed(f, V, mu).value;
}

double devinatz_variance(const TestFunction& f, const Potential& V, double mu,
                         int M) {
  OrbitData orb = angle_parametrization(V, mu, M);
  std::vector<double> g(M);
  for (int m = 0; m < M; ++m) g[m] = f(orb.psi_samples[m]);

  // spectral derivative of f o psi for the diagonal limit
  auto ghat = dft_forward(g);
  std::vector<std::complex<double>> dh(M);
  for (int k = 0; k < M; ++k) {
    int kk = (k <= M / 2) ? k : k - M;
    if (kk == M / 2) kk = 0;  // drop the unmatched Nyquist mode
    dh[k] = std::complex<double>(0.0, kk) * ghat[k];
  }
  auto dg = dft_backward(dh);

  // weights 1/|e^{i th_m} - e^{i th_{m'}}|^2 depend only on d = m - m'
  std::vector<double> w(M, 0.0);
  for (int d = 1; d < M; ++d) {
    double s = std::sin(M_PI * d / M);
    w[d] = 1.0 / (4.0 * s * s);
  }

  double total = 0.0;
  for (int d = 1; d < M; ++d) {
    double acc = 0.0;
    for (int m = 0; m < M; ++m) {
      double diff = g[m] - g[(m + d) % M];
      acc += diff * diff;
    }
    total += acc * w[d];
  }
  for (int m = 0; m < M; ++m) total += dg[m].real() * dg[m].real();
  return 0.5 * total / (static_cast<double>(M) * M);
}

double gff_kernel(const Potential& V, double mu, double x, double z) {
  auto [a, b] = turning_points(V, mu);
  if (x <= a || x >= b) throw OutOfDroplet(x);
  if (z <= a || z >= b) throw OutOfDroplet(z);
  double tx = theta_map(V, mu, x);
  double tz = theta_map(V, mu, z);
  if (std::abs(tx - tz) < 1e-10) throw SingularDiagonal();
  return std::log(std::abs(std::sin(0.5 * (tx + tz)))) -
         std::log(std::abs(std::sin(0.5 * (tx - tz))));
}

double gff_variance(const TestFunction& f, const Potential& V, double mu,
                    int grid_points, double delta) {
  auto [a, b] = turning_points(V, mu);
  const double T = period(V, mu);
  const int m = grid_points;
  const double h = (b - a) / m;
  if (h > 0.75 * delta)
    throw std::invalid_argument(
        "gff_variance: grid too coarse for the diagonal strip");

  std::vector<double> xs(m), th(m), fp(m), thp(m);
  for (int i = 0; i < m; ++i) {
    xs[i] = a + (i + 0.5) * h;
    th[i] = theta_map(V, mu, xs[i], a, b, T);
    fp[i] = f.deriv(xs[i]);
    double q = mu - V(xs[i]);
    thp[i] = (q > 0.0) ? M_PI / T / std::sqrt(q) : 0.0;
  }

  // off-strip tensor sum; kernel is symmetric so run j > i and double
  double off = 0.0;
  const int skip = static_cast<int>(std::ceil(delta / h));
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int j = i + skip; j < m; ++j) {
      double K = std::log(std::abs(std::sin(0.5 * (th[i] + th[j])))) -
                 std::log(std::abs(std::sin(0.5 * (th[i] - th[j]))));
      acc += fp[j] * K;
    }
    off += fp[i] * acc;
  }
  off *= 2.0 * h * h;
  // cells |i-j| <= skip-1 are excluded; with midpoint cells the continuous
  // exclusion boundary sits at (skip - 1/2) h
  double strip_width = (skip - 0.5) * h;
  double strip = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = std::abs(std::sin(th[i]));
    double local = std::log(std::max(s, 1e-300)) -
                   std::log(0.5 * thp[i] * strip_width) + 1.0;
    strip += fp[i] * fp[i] * 2.0 * strip_width * local;
  }
  strip *= h;
  return (off + strip) / (2.0 * M_PI * M_PI);
}

}  // namespace ff
