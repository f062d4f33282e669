#include "ff/determinantal.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <stdexcept>

#include "ff/errors.hpp"

namespace ff {

namespace {

Eigen::VectorXd sample_on_grid(const Grid& g, const TestFunction& f) {
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = f(g.points[i]);
  return v;
}

// Phi^T diag(w) Phi dx restricted to the first m columns.
Eigen::MatrixXd weighted_gram(const SpectralDecomposition& dec,
                              const Eigen::VectorXd& w, int m) {
  const auto& Phi = dec.eigenfunctions;
  Eigen::MatrixXd B = w.asDiagonal() * Phi.leftCols(m);
  return Phi.leftCols(m).transpose() * B * dec.grid.dx;
}

}  // namespace

double linear_statistic_mean(const Projector& P, const TestFunction& f) {
  const auto& dec = P.decomposition();
  Eigen::VectorXd fv = sample_on_grid(dec.grid, f);
  auto Phi = P.columns();
  double s = 0.0;
  for (int j = 0; j < P.rank(); ++j)
    s += Phi.col(j).cwiseProduct(fv).dot(Phi.col(j));
  return s * dec.grid.dx;
}

ExactVariance exact_variance_detailed(const Projector& P,
                                      const TestFunction& f) {
  const auto& dec = P.decomposition();
  const double dx = dec.grid.dx;
  const int N = P.rank();
  Eigen::VectorXd fv = sample_on_grid(dec.grid, f);
  auto Phi = P.columns();

  Eigen::MatrixXd A = weighted_gram(dec, fv, N);  // <phi_j, f phi_k>
  // route 1: tr(f^2 Pi) - tr(f Pi f Pi)
  double tr_f2 = 0.0;
  Eigen::VectorXd norms2(N);
  for (int j = 0; j < N; ++j) {
    double t = Phi.col(j).cwiseProduct(fv).squaredNorm() * dx;
    norms2[j] = t;
    tr_f2 += t;
  }
  double tr_fpfp = 0.0;
  for (int j = 0; j < N; ++j) tr_fpfp += A.row(j).dot(A.col(j));

  ExactVariance out;
  out.value = tr_f2 - tr_fpfp;
  // route 2: (1/2)||[Pi,f]||_HS^2 = sum_j (||f phi_j||^2 - sum_{k<N} A_kj^2)
  double comm = 0.0;
  for (int j = 0; j < N; ++j) comm += norms2[j] - A.col(j).squaredNorm();
  out.commutator_form = comm;
  out.consistency_gap = std::abs(out.value - out.commutator_form);
  if (out.consistency_gap > 1e-10 * std::max(1.0, tr_f2))
    throw Error("exact_variance: trace and commutator forms disagree by " +
                std::to_string(out.consistency_gap));
  return out;
}

double exact_variance(const Projector& P, const TestFunction& f) {
  return exact_variance_detailed(P, f).value;
}

std::complex<double> log_laplace(const Projector& P, const TestFunction& f,
                                 std::complex<double> eta) {
  const auto& dec = P.decomposition();
  const double dx = dec.grid.dx;
  const int N = P.rank();
  if (N == 0) return 0.0;
  const Grid& g = dec.grid;

  Eigen::VectorXd mr(g.n), mi(g.n);
  double sup = 0.0;
  for (int i = 0; i < g.n; ++i) {
    std::complex<double> m = std::exp(eta * f(g.points[i])) - 1.0;
    mr[i] = m.real();
    mi[i] = m.imag();
    sup = std::max(sup, std::abs(m));
  }
  if (sup >= 1.0) throw SymbolTooLarge(sup);

  auto Phi = P.columns();
  Eigen::MatrixXd Gr =
      Phi.transpose() * (mr.asDiagonal() * Phi).eval() * dx;
  Eigen::MatrixXcd G = Gr.cast<std::complex<double>>();
  if (eta.imag() != 0.0) {
    Eigen::MatrixXd Gi =
        Phi.transpose() * (mi.asDiagonal() * Phi).eval() * dx;
    G += std::complex<double>(0.0, 1.0) * Gi.cast<std::complex<double>>();
  }

  // ||G|| <= ||m||_inf < 1, so every eigenvalue of G stays in the unit disk
  // and the principal branch of log(1 + .) is the analytic one vanishing at
  // eta = 0.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(G, /*computeU=*/false);
  std::complex<double> ld = 0.0;
  for (int j = 0; j < N; ++j) ld += std::log(1.0 + schur.matrixT()(j, j));
  return ld;
}

Cumulants cumulants(const Projector& P, const TestFunction& f,
                    double eta_step) {
  // symbol bound at 4x the step (stencil reaches 2x; factor-2 safety)
  {
    const Grid& g = P.decomposition().grid;
    double sup = 0.0;
    for (int i = 0; i < g.n; ++i)
      sup = std::max(sup, std::abs(std::exp(4.0 * eta_step * f(g.points[i])) - 1.0));
    if (sup >= 1.0) throw SymbolTooLarge(sup);
  }
  Cumulants c;
  c.eta_step = eta_step;
  c.k1 = linear_statistic_mean(P, f);
  c.k2_exact = exact_variance(P, f);

  auto L = [&](double e) {
    return e == 0.0 ? 0.0 : log_laplace(P, f, e).real();
  };
  auto stencil = [&](double h, double& k2, double& k3, double& k4) {
    double l1 = L(h), l2 = L(2 * h), lm1 = L(-h), lm2 = L(-2 * h);
    k2 = (-l2 + 16 * l1 + 16 * lm1 - lm2) / (12 * h * h);
    k3 = (l2 - 2 * l1 + 2 * lm1 - lm2) / (2 * h * h * h);
    k4 = (l2 - 4 * l1 - 4 * lm1 + lm2) / (h * h * h * h);  // L(0) = 0
  };
  double k2h, k3h, k4h, k2h2, k3h2, k4h2;
  stencil(eta_step, k2h, k3h, k4h);
  stencil(0.5 * eta_step, k2h2, k3h2, k4h2);
  c.k2_fd = k2h2;
  c.k3 = k3h2;
  c.k4 = k4h2;
  c.k3_err = std::abs(k3h - k3h2) / 3.0;
  c.k4_err = std::abs(k4h - k4h2) / 3.0;
  return c;
}

double szego_residual(const Projector& P, const TestFunction& f, double k1,
                      double sigma2, double eta_max) {
  double res = 0.0;
  for (int k = 1; k <= 6; ++k) {
    double eta = eta_max * k / 6.0;
    for (double e : {eta, -eta}) {
      double ld = log_laplace(P, f, e).real();
      res = std::max(res, std::abs(ld - e * k1 - 0.5 * e * e * sigma2));
    }
  }
  return res;
}

CumulantReport make_cumulant_report(const Projector& P, const TestFunction& f,
                                    const Potential& V, double eta_step,
                                    double eta_max) {
  CumulantReport r;
  r.hbar = P.hbar();
  r.f_id = f.id();
  r.kappa = cumulants(P, f, eta_step);
  double mu = P.mu();
  r.sigma2_fourier = predicted_variance_fourier(f, V, mu);
  r.sigma2_devinatz = devinatz_variance(f, V, mu);
  r.sigma2_gff = gff_variance(f, V, mu);
  r.szego_residual =
      szego_residual(P, f, r.kappa.k1, r.sigma2_fourier, eta_max);
  return r;
}

UpsilonSeries upsilon_coefficients(const Projector& P,
                                   const std::vector<double>& symbol_values,
                                   int n_max) {
  const auto& dec = P.decomposition();
  const Grid& g = dec.grid;
  if (static_cast<int>(symbol_values.size()) != g.n)
    throw std::invalid_argument("upsilon_coefficients: symbol size mismatch");
  if (n_max < 2) throw std::invalid_argument("upsilon_coefficients: n_max < 2");
  const int N = P.rank();
  const int M = dec.count();
  const double dx = g.dx;
  Eigen::Map<const Eigen::VectorXd> av(symbol_values.data(), g.n);

  const auto& Phi = dec.eigenfunctions;
  Eigen::MatrixXd At =
      Phi.transpose() * (av.asDiagonal() * Phi).eval() * dx;  // M x M

  // operator norm by power iteration on the symmetric matrix At
  double rho = 0.0;
  {
    Eigen::VectorXd v(M);
    for (int i = 0; i < M; ++i) v[i] = std::cos(0.7 * i) + 0.3;
    v.normalize();
    for (int it = 0; it < 80; ++it) {
      v = (At * v).eval();
      double nv = v.norm();
      if (nv == 0.0) break;
      rho = nv;
      v /= nv;
    }
  }
  if (rho >= 1.0) throw NormTooLarge(rho);

  UpsilonSeries out;
  out.rho = rho;
  out.coeffs.resize(n_max - 1);

  Eigen::MatrixXd Apow = At;                         // At^p
  Eigen::MatrixXd PA = At.topLeftCorner(N, N);       // Pi A Pi
  Eigen::MatrixXd PApow = PA;
  double sign = 1.0;  // (-1)^n, starting at n = 2
  for (int n = 2; n <= n_max; ++n) {
    Apow = (Apow * At).eval();
    PApow = (PApow * PA).eval();
    double tr1 = Apow.topLeftCorner(N, N).trace();
    double tr2 = PApow.trace();
    out.coeffs[n - 2] = sign * (tr1 - tr2) / n;
    sign = -sign;
  }

  // grid-exact ||[Pi,A]||_HS^2 = 2 (tr(Pi A^2 Pi) - tr((Pi A Pi)^2)) and the
  // Parseval deficit of the retained-basis truncation
  double tr_a2 = 0.0, tail = 0.0;
  for (int j = 0; j < N; ++j) {
    double exact = (av.cwiseProduct(Phi.col(j))).squaredNorm() * dx;
    tr_a2 += exact;
    tail += exact - At.col(j).head(M).squaredNorm();
  }
  out.comm_hs2 = 2.0 * (tr_a2 - At.topLeftCorner(N, N).squaredNorm());
  out.tail_energy = tail;
  return out;
}

MatrixElements matrix_elements(const SpectralDecomposition& dec,
                               const TestFunction& f, int window_lo,
                               int window_hi, int band) {
  if (window_lo < 0 || window_hi >= dec.count() || window_lo > window_hi)
    throw std::invalid_argument("matrix_elements: window outside decomposition");
  const int w = window_hi - window_lo + 1;
  Eigen::VectorXd fv = sample_on_grid(dec.grid, f);
  auto Phi = dec.eigenfunctions.middleCols(window_lo, w);
  Eigen::MatrixXd A =
      Phi.transpose() * (fv.asDiagonal() * Phi).eval() * dec.grid.dx;

  MatrixElements me;
  me.window_lo = window_lo;
  me.window_hi = window_hi;
  me.entries = A;
  me.hermiticity_residual = (A - A.transpose()).cwiseAbs().maxCoeff();

  int B = std::max(1, band);
  while (B < w - 1) {
    double edge = 0.0;
    for (int j = 0; j < w; ++j)
      if (j + B < w) edge = std::max(edge, std::abs(A(j, j + B)));
    if (edge < 1e-6) {
      me.offband_edge = edge;
      break;
    }
    B *= 2;
  }
  me.band = std::min(B, w - 1);
  if (me.band == w - 1) {
    double edge = 0.0;
    for (int j = 0; j < w; ++j)
      if (j + me.band < w) edge = std::max(edge, std::abs(A(j, j + me.band)));
    me.offband_edge = edge;
  }
  return me;
}

double toeplitz_deviation(const SpectralDecomposition& dec,
                          const TestFunction& f, const Potential& V, double mu,
                          int band) {
  int N = 0;
  for (double lam : dec.eigenvalues)
    if (lam <= mu) ++N;
  const int W = 5;
  if (N - W < 0 || N + W >= dec.count())
    throw std::invalid_argument(
        "toeplitz_deviation: decomposition window too small around N; raise "
        "lambda_cap");
  MatrixElements me = matrix_elements(dec, f, N - W, N + W, band);

  std::map<int, FlowFourier> cache;
  double dev = 0.0;
  for (int j = N - W; j <= N + W; ++j) {
    for (int k = N - W; k <= N + W; ++k) {
      if (std::abs(j - k) > band) continue;
      int s = j + k;
      auto it = cache.find(s);
      if (it == cache.end()) {
        double I = 0.5 * s * dec.hbar;
        double lam = invert_action(V, I, mu);
        it = cache.emplace(s, flow_fourier_coefficients(f, V, lam, band + 2))
                 .first;
      }
      std::complex<double> target = it->second.a(k - j);
      dev = std::max(dev, std::abs(me.at(j, k) - target));
    }
  }
  return dev;
}

double counting_covariance(const Projector& P, double x, double z) {
  const auto& dec = P.decomposition();
  const Grid& g = dec.grid;
  const int N = P.rank();
  if (N == 0) return 0.0;
  auto Phi = P.columns();

  auto prefix_gram = [&](double cut) {
    int rows = 0;
    while (rows < g.n && g.points[rows] <= cut) ++rows;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, N);
    if (rows > 0)
      G = Phi.topRows(rows).transpose() * Phi.topRows(rows) * g.dx;
    return G;
  };
  Eigen::MatrixXd Gx = prefix_gram(x);
  Eigen::MatrixXd Gz = prefix_gram(z);
  const Eigen::MatrixXd& Gmin = (x <= z) ? Gx : Gz;
  return Gmin.trace() - Gx.cwiseProduct(Gz).sum();
}

}  // namespace ff
