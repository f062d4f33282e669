#include "ff/fft.hpp"

#include <fftw3.h>

namespace ff {

namespace {

std::vector<std::complex<double>> run_plan(
    const std::vector<std::complex<double>>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(n);
  // FFTW guarantees complex layout compatible with std::complex<double>
  fftw_plan plan = fftw_plan_dft_1d(
      n,
      reinterpret_cast<fftw_complex*>(
          const_cast<std::complex<double>*>(in.data())),
      reinterpret_cast<fftw_complex*>(out.data()), sign,
      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

std::vector<std::complex<double>> dft_forward(
    const std::vector<std::complex<double>>& v) {
  auto out = run_plan(v, FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(v.size());
  for (auto& c : out) c *= inv;
  return out;
}

std::vector<std::complex<double>> dft_forward(const std::vector<double>& v) {
  std::vector<std::complex<double>> cv(v.begin(), v.end());
  return dft_forward(cv);
}

std::vector<std::complex<double>> dft_backward(
    const std::vector<std::complex<double>>& c) {
  return run_plan(c, FFTW_BACKWARD);
}

}  // namespace ff
