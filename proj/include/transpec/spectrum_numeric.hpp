#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "transpec/stokes.hpp"

namespace transpec {

using cplx = std::complex<double>;

// Fourier modes n + xi, n = -N..N, with n = 0 dropped when xi = 0.
std::vector<int> operator_modes(int N, double xi);

// Linearized operator about a Stokes wave on Bloch modes e^{i(n+xi)z},
// stored as a diagonal plus the convolution weights of the wave (|j| <= 6).
class BandedOperator {
 public:
  BandedOperator(const StokesWave& wave, double rho, double xi, int N);

  int dimension() const { return static_cast<int>(modes_.size()); }
  int bandwidth() const { return bandwidth_; }
  const std::vector<int>& modes() const { return modes_; }
  const Eigen::VectorXcd& diagonal() const { return diag_; }
  double rho() const { return rho_; }
  double xi() const { return xi_; }
  int N() const { return N_; }

  // Entry in row `row`, column `col` (indices into modes()).
  cplx entry(int row, int col) const;
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
  Eigen::MatrixXcd dense() const;

 private:
  std::vector<int> modes_;
  std::vector<double> weights_;  // w_j for j = -6..6 at offset 6
  Eigen::VectorXcd diag_;
  double k2_;
  double xi_;
  double rho_;
  int N_;
  int bandwidth_;
};

struct OperatorMatrix {
  int N;
  double rho;
  double xi;
  StokesWave wave;
  std::vector<int> modes;
  Eigen::MatrixXcd entries;

  int dimension() const { return static_cast<int>(modes.size()); }
};

// Throws ValidationError for N < 8 or xi outside (-1/2, 1/2].
OperatorMatrix assemble_operator(const StokesWave& wave, double rho, double xi, int N);

struct SpectrumResult {
  std::vector<cplx> eigenvalues;
  double rho = 0.0;
  double xi = 0.0;
  double eps = 0.0;
  double k = 0.0;
  int N = 0;
  double max_real = 0.0;
  double residual_estimate = 0.0;
  double scale = 0.0;  // largest diagonal magnitude, a proxy for the operator norm
};

SpectrumResult eig_dense(const OperatorMatrix& matrix);

struct ShiftInvertOptions {
  int krylov_dim = 0;  // 0 picks max(2 count + 20, 40)
  int max_restarts = 60;
  double tol = 1e-12;
  double inner_tol = 1e-13;
  int inner_restart = 200;
  int inner_max_cycles = 40;
};

// `count` eigenvalues nearest `shift`, via Arnoldi on (A - shift)^{-1} with
// Jacobi-preconditioned GMRES inner solves. Throws NumericalError when the
// inner solve stagnates.
SpectrumResult shift_invert_eigs(const StokesWave& wave, double rho, double xi, int N, cplx shift,
                                 int count, const ShiftInvertOptions& opts = {});

double max_growth_rate(const StokesWave& wave, double rho, double xi, int N);
double max_growth_rate(const ModelSpec& model, double k, double eps, double rho, double xi,
                       int N);

// Largest distance from a point of `eigs` mapped by `map` to the nearest
// unused point of `eigs` (greedy matching).
template <class Map>
double closure_defect(const std::vector<cplx>& eigs, Map&& map);

struct SweepPoint {
  double rho;
  double xi;
  bool ok;
  std::string error;
  SpectrumResult result;
};

// Row-major over rho then xi. `threads` <= 0 uses TRANSPEC_THREADS or the
// OpenMP default.
std::vector<SweepPoint> sweep(const StokesWave& wave, const std::vector<double>& rho_grid,
                              const std::vector<double>& xi_grid, int N, int threads = 0);
std::vector<SweepPoint> sweep_serial(const StokesWave& wave, const std::vector<double>& rho_grid,
                                     const std::vector<double>& xi_grid, int N);

int resolve_threads(int requested);

struct Bubble {
  cplx center;
  double max_growth;
  double xi_lo;
  double xi_hi;
  double rho;
};

struct BubbleOptions {
  double threshold = 0.0;  // 0 picks 10 * machine epsilon * spectral scale
  double gap = 0.05;
};

std::vector<Bubble> detect_bubbles(const std::vector<SweepPoint>& points,
                                   const BubbleOptions& opts = {});

template <class Map>
double closure_defect(const std::vector<cplx>& eigs, Map&& map) {
  std::vector<bool> used(eigs.size(), false);
  double worst = 0.0;
  for (const cplx& z : eigs) {
    const cplx target = map(z);
    double best = INFINITY;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < eigs.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(eigs[j] - target);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace transpec
