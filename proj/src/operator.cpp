#include <cmath>

#include "transpec/errors.hpp"
#include "transpec/spectrum_numeric.hpp"

namespace transpec {

std::vector<int> operator_modes(int N, double xi) {
  std::vector<int> modes;
  for (int n = -N; n <= N; ++n) {
    if (n == 0 && xi == 0.0) continue;
    modes.push_back(n);
  }
  return modes;
}

BandedOperator::BandedOperator(const StokesWave& wave, double rho, double xi, int N)
    : modes_(operator_modes(N, xi)),
      weights_(13, 0.0),
      k2_(wave.k * wave.k),
      xi_(xi),
      rho_(rho),
      N_(N) {
  if (N < 8) throw ValidationError("truncation N must be at least 8");
  if (!(xi > -0.5 && xi <= 0.5)) throw ValidationError("Floquet exponent must lie in (-1/2, 1/2]");
  if (!std::isfinite(rho)) throw ValidationError("rho must be finite");

  // Exponential Fourier coefficients of the profile and of its square.
  double eta[7] = {0, 0, 0, 0, 0, 0, 0};  // index j + 3
  for (int n = 1; n <= 3; ++n) {
    eta[3 + n] = 0.5 * wave.cos_coefficient(n);
    eta[3 - n] = eta[3 + n];
  }
  double sq[13] = {};  // index j + 6
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) sq[a + b + 6] += eta[a + 3] * eta[b + 3];
  }
  const ModelSpec& m = wave.model;
  for (int j = -6; j <= 6; ++j) {
    const double lin = (j >= -3 && j <= 3) ? eta[j + 3] : 0.0;
    weights_[j + 6] = -2.0 * m.alpha1() * lin - 3.0 * m.alpha2() * sq[j + 6];
  }
  bandwidth_ = 0;
  for (int j = 1; j <= 6; ++j) {
    if (weights_[6 + j] != 0.0 || weights_[6 - j] != 0.0) bandwidth_ = j;
  }

  const double c = wave.speed();
  const double g = m.gamma() + rho * rho;
  diag_.resize(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const double p = modes_[i] + xi;
    const double re = p * k2_ * (c - m.jhat(wave.k * p) + weights_[6]) - g / p;
    diag_[i] = cplx(0.0, re);
  }
}

cplx BandedOperator::entry(int row, int col) const {
  if (row == col) return diag_[row];
  const int j = modes_[row] - modes_[col];
  if (j < -6 || j > 6) return 0.0;
  return cplx(0.0, (modes_[row] + xi_) * k2_ * weights_[j + 6]);
}

void BandedOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  const int n = dimension();
  y.resize(n);
  for (int r = 0; r < n; ++r) {
    cplx acc = diag_[r] * x[r];
    const int lo = std::max(0, r - 6), hi = std::min(n - 1, r + 6);
    cplx band = 0.0;
    for (int c = lo; c <= hi; ++c) {
      if (c == r) continue;
      const int j = modes_[r] - modes_[c];
      if (j < -6 || j > 6) continue;
      band += weights_[j + 6] * x[c];
    }
    y[r] = acc + cplx(0.0, (modes_[r] + xi_) * k2_) * band;
  }
}

Eigen::MatrixXcd BandedOperator::dense() const {
  const int n = dimension();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = std::max(0, r - 7); c <= std::min(n - 1, r + 7); ++c) a(r, c) = entry(r, c);
  }
  return a;
}

OperatorMatrix assemble_operator(const StokesWave& wave, double rho, double xi, int N) {
  BandedOperator op(wave, rho, xi, N);
  return OperatorMatrix{N, rho, xi, wave, op.modes(), op.dense()};
}

}  // namespace transpec
