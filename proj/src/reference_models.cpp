#include "ff/reference_models.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "ff/fft.hpp"

namespace ff {

CircleSymbol CircleSymbol::from_function(
    const std::function<double(double)>& f, int K) {
  if (K < 1) throw std::invalid_argument("CircleSymbol: K < 1");
  int P = 1024;
  while (P < 8 * K) P *= 2;
  for (;;) {
    std::vector<double> samples(P);
    for (int m = 0; m < P; ++m) samples[m] = f(2.0 * M_PI * m / P);
    auto hat = dft_forward(samples);
    double tail = std::abs(hat[(K % P + P) % P]);
    if (tail < 1e-10 || P >= (1 << 20)) {
      if (tail >= 1e-10 && K < P / 4) {
        K *= 2;  // symbol not yet resolved at K; raise the cut
        continue;
      }
      CircleSymbol s;
      s.K_ = K;
      s.coeffs_.resize(2 * K + 1);
      for (int k = -K; k <= K; ++k) s.coeffs_[k + K] = hat[(k % P + P) % P];
      return s;
    }
    P *= 2;
  }
}

double CircleSymbol::eval(double theta) const {
  std::complex<double> s = coeffs_[K_];  // k = 0
  for (int k = 1; k <= K_; ++k) {
    std::complex<double> e(std::cos(k * theta), std::sin(k * theta));
    s += coeff(k) * e + coeff(-k) * std::conj(e);
  }
  return s.real();
}

double toeplitz_log_det(const CircleSymbol& symbol, int N) {
  if (N < 1) throw std::invalid_argument("toeplitz_log_det: N < 1");
  int P = 1024;
  while (P < 8 * N) P *= 2;
  std::vector<double> ef(P);
  for (int m = 0; m < P; ++m)
    ef[m] = std::exp(symbol.eval(2.0 * M_PI * m / P));
  auto c = dft_forward(ef);

  Eigen::MatrixXcd T(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) T(i, j) = c[((i - j) % P + P) % P];

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(T);
  double ld = 0.0;
  for (int i = 0; i < N; ++i) ld += std::log(std::abs(lu.matrixLU()(i, i)));
  return ld;  // symbol e^f > 0, so det T_N > 0 and log|det| = log det
}

double szego_rhs(const CircleSymbol& symbol) {
  std::complex<double> s = 0.0;
  for (int k = -symbol.K(); k <= symbol.K(); ++k)
    s += static_cast<double>(std::abs(k)) * symbol.coeff(k) * symbol.coeff(-k);
  return 0.5 * s.real();
}

double gue_chebyshev_variance(const TestFunction& f) {
  const int M = 8192;
  std::vector<double> g(M);
  for (int m = 0; m < M; ++m) g[m] = f(std::cos(2.0 * M_PI * m / M));
  auto hat = dft_forward(g);
  double s = 0.0;
  for (int k = 1; k <= M / 2; ++k) s += k * std::norm(hat[k]);
  return s;
}

double cue_projector_log_laplace(const std::function<double(double)>& f, int N,
                                 int theta_points) {
  const int P = theta_points;
  // G_{jk} = (1/P) sum_m e^{-ij theta_m} (e^{f} - 1) e^{ik theta_m}
  // (trapezoid rule on the circle; exact once P resolves the symbol)
  Eigen::MatrixXcd G(N, N);
  std::vector<double> w(P);
  for (int m = 0; m < P; ++m)
    w[m] = std::exp(f(2.0 * M_PI * m / P)) - 1.0;
  for (int d = -(N - 1); d <= N - 1; ++d) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < P; ++m) {
      double th = 2.0 * M_PI * m / P;
      acc += w[m] * std::complex<double>(std::cos(d * th), std::sin(d * th));
    }
    acc /= static_cast<double>(P);
    for (int j = 0; j < N; ++j) {
      int k = j + d;
      if (k >= 0 && k < N) G(k, j) = acc;
    }
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(G, false);
  std::complex<double> ld = 0.0;
  for (int j = 0; j < N; ++j) ld += std::log(1.0 + schur.matrixT()(j, j));
  return ld.real();
}

}  // namespace ff
