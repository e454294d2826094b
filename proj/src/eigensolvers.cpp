#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#if defined(__SSE2__)
#include <pmmintrin.h>
#include <xmmintrin.h>
#endif

#include "transpec/errors.hpp"
#include "transpec/spectrum_numeric.hpp"

namespace transpec {

namespace {

SpectrumResult make_result(const StokesWave& wave, double rho, double xi, int N,
                           const Eigen::VectorXcd& diag) {
  SpectrumResult r;
  r.rho = rho;
  r.xi = xi;
  r.eps = wave.eps;
  r.k = wave.k;
  r.N = N;
  r.scale = diag.cwiseAbs().maxCoeff();
  return r;
}

void finish(SpectrumResult& r) {
  r.max_real = -std::numeric_limits<double>::infinity();
  for (const cplx& z : r.eigenvalues) r.max_real = std::max(r.max_real, z.real());
}

std::string describe(const BandedOperator& op, const StokesWave& w) {
  std::ostringstream os;
  os.precision(9);
  os << "(model=" << w.model.id() << ", k=" << w.k << ", eps=" << w.eps << ", rho=" << op.rho()
     << ", xi=" << op.xi() << ", N=" << op.N() << ", dim=" << op.dimension() << ")";
  return os.str();
}

// The QR sweeps leave subnormal fill-in far from the diagonal, which is slow
// on x86. Flush it to zero for the duration of a solve.
class FlushSubnormals {
 public:
#if defined(__SSE2__)
  FlushSubnormals() : saved_(_mm_getcsr()) {
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
  }
  ~FlushSubnormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

// Restarted GMRES with right Jacobi preconditioning for (A - shift) x = b.
class ShiftedSolver {
 public:
  ShiftedSolver(const BandedOperator& op, cplx shift, const ShiftInvertOptions& opts)
      : op_(op), shift_(shift), opts_(opts) {
    inv_diag_.resize(op.dimension());
    for (int i = 0; i < op.dimension(); ++i) {
      const cplx d = op.diagonal()[i] - shift;
      inv_diag_[i] = std::abs(d) > 0.0 ? 1.0 / d : 1.0;
      norm_ = std::max(norm_, std::abs(d));
    }
  }

  // Residual small relative to b, or at the rounding floor of ||A - shift|| ||x||.
  bool converged(double res, double bnorm, const Eigen::VectorXcd& x) const {
    return res <= opts_.inner_tol * bnorm ||
           res <= 64.0 * std::numeric_limits<double>::epsilon() * norm_ * x.norm();
  }

  void apply_shifted(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    op_.apply(x, y);
    y -= shift_ * x;
  }

  // Returns false on stagnation.
  bool solve(const Eigen::VectorXcd& b, Eigen::VectorXcd& x) const {
    const int n = op_.dimension();
    const int m = std::min(n, opts_.inner_restart);
    const double bnorm = b.norm();
    x = Eigen::VectorXcd::Zero(n);
    if (bnorm == 0.0) return true;

    Eigen::MatrixXcd V(n, m + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    Eigen::VectorXd cs(m);
    Eigen::VectorXcd sn(m), g(m + 1), w(n), tmp(n);
    Eigen::VectorXcd r = b;
    double prev = bnorm;
    for (int cycle = 0; cycle < opts_.inner_max_cycles; ++cycle) {
      if (cycle > 0) {
        apply_shifted(x, tmp);
        r = b - tmp;
      }
      const double beta = r.norm();
      if (beta <= opts_.inner_tol * bnorm || (cycle > 0 && converged(beta, bnorm, x))) return true;
      if (cycle > 0 && beta > 0.999 * prev) return false;
      prev = beta;
      V.col(0) = r / beta;
      g.setZero();
      g[0] = beta;
      H.setZero();
      int used = 0;
      for (int j = 0; j < m; ++j) {
        tmp = inv_diag_.cwiseProduct(V.col(j));
        apply_shifted(tmp, w);
        for (int pass = 0; pass < 2; ++pass) {
          for (int i = 0; i <= j; ++i) {
            const cplx h = V.col(i).dot(w);
            H(i, j) += h;
            w -= h * V.col(i);
          }
        }
        const double hn = w.norm();
        H(j + 1, j) = hn;
        // Unitary rotations [c s; -conj(s) c] with c real.
        for (int i = 0; i < j; ++i) {
          const cplx t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
          H(i + 1, j) = -std::conj(sn[i]) * H(i, j) + cs[i] * H(i + 1, j);
          H(i, j) = t;
        }
        const cplx a = H(j, j);
        const double den = std::hypot(std::abs(a), hn);
        if (std::abs(a) == 0.0) {
          cs[j] = 0.0;
          sn[j] = 1.0;
        } else {
          cs[j] = std::abs(a) / den;
          sn[j] = (a / std::abs(a)) * hn / den;
        }
        H(j, j) = cs[j] * a + sn[j] * hn;
        H(j + 1, j) = 0.0;
        g[j + 1] = -std::conj(sn[j]) * g[j];
        g[j] = cs[j] * g[j];
        used = j + 1;
        if (std::abs(g[j + 1]) <= opts_.inner_tol * bnorm || hn == 0.0) break;
        V.col(j + 1) = w / hn;
      }
      Eigen::VectorXcd y = H.topLeftCorner(used, used)
                               .triangularView<Eigen::Upper>()
                               .solve(g.head(used));
      x += inv_diag_.cwiseProduct(V.leftCols(used) * y);
    }
    apply_shifted(x, tmp);
    return converged((b - tmp).norm(), bnorm, x);
  }

 private:
  const BandedOperator& op_;
  cplx shift_;
  const ShiftInvertOptions& opts_;
  Eigen::VectorXcd inv_diag_;
  double norm_ = 0.0;
};

}  // namespace

SpectrumResult eig_dense(const OperatorMatrix& matrix) {
  const Eigen::MatrixXcd& a = matrix.entries;
  if (matrix.dimension() > 4096) throw ValidationError("dense eigensolve limited to dimension 4096");
  const FlushSubnormals ftz;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(a, true);
  if (ces.info() != Eigen::Success) {
    std::ostringstream os;
    os.precision(9);
    os << "dense eigensolver did not converge (k=" << matrix.wave.k << ", eps=" << matrix.wave.eps
       << ", rho=" << matrix.rho << ", xi=" << matrix.xi << ", N=" << matrix.N << ")";
    throw NumericalError(os.str());
  }
  SpectrumResult r = make_result(matrix.wave, matrix.rho, matrix.xi, matrix.N, a.diagonal());
  const auto& vals = ces.eigenvalues();
  const auto& vecs = ces.eigenvectors();
  r.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  const int n = matrix.dimension();
  const int stride = std::max(1, n / 32);
  for (int i = 0; i < n; i += stride) {
    const Eigen::VectorXcd v = vecs.col(i);
    const double res = (a * v - vals[i] * v).norm() / v.norm();
    r.residual_estimate = std::max(r.residual_estimate, res);
  }
  finish(r);
  return r;
}

SpectrumResult shift_invert_eigs(const StokesWave& wave, double rho, double xi, int N, cplx shift,
                                 int count, const ShiftInvertOptions& opts) {
  if (count < 1 || count > 20) throw ValidationError("shift-invert count must be in 1..20");
  const BandedOperator op(wave, rho, xi, N);
  const int n = op.dimension();
  if (count > n) throw ValidationError("shift-invert count exceeds operator dimension");
  const int m = std::min(n, opts.krylov_dim > 0 ? opts.krylov_dim : std::max(2 * count + 20, 40));
  const ShiftedSolver solver(op, shift, opts);

  auto stagnated = [&]() {
    std::ostringstream os;
    os.precision(9);
    os << "inner solve stagnated at shift " << shift.real() << (shift.imag() < 0 ? "" : "+")
       << shift.imag() << "i " << describe(op, wave)
       << "; the shift may coincide with an eigenvalue, try perturbing it";
    return NumericalError(os.str());
  };

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v0(n);
  for (int i = 0; i < n; ++i) v0[i] = cplx(nd(rng), nd(rng));

  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXcd H(m + 1, m);
  Eigen::VectorXcd w(n);
  std::vector<int> order;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> small;
  int used = 0;
  bool converged = false;
  for (int restart = 0; restart <= opts.max_restarts && !converged; ++restart) {
    V.col(0) = v0 / v0.norm();
    H.setZero();
    used = m;
    double hnorm = 0.0;
    for (int j = 0; j < m; ++j) {
      if (!solver.solve(V.col(j), w)) throw stagnated();
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const cplx h = V.col(i).dot(w);
          H(i, j) += h;
          w -= h * V.col(i);
        }
      }
      const double hn = w.norm();
      H(j + 1, j) = hn;
      hnorm = std::max(hnorm, H.col(j).norm());
      if (hn <= 1e-14 * hnorm) {
        used = j + 1;
        break;
      }
      V.col(j + 1) = w / hn;
    }
    small.compute(H.topLeftCorner(used, used), true);
    if (small.info() != Eigen::Success) {
      throw NumericalError("Ritz eigensolve failed " + describe(op, wave));
    }
    const auto& theta = small.eigenvalues();
    order.resize(used);
    for (int i = 0; i < used; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(theta[a]) > std::abs(theta[b]); });
    const int want = std::min(count, used);
    const double hlast = std::abs(H(used, used - 1));
    converged = true;
    for (int t = 0; t < want; ++t) {
      const Eigen::VectorXcd y = small.eigenvectors().col(order[t]);
      const double est = hlast * std::abs(y[used - 1]) / y.norm();
      if (est > opts.tol * std::abs(theta[order[t]])) converged = false;
    }
    if (used < m) converged = true;  // invariant subspace: Ritz values are exact
    if (!converged) {
      v0.setZero();
      for (int t = 0; t < want; ++t) {
        const Eigen::VectorXcd y = small.eigenvectors().col(order[t]);
        v0 += V.leftCols(used) * (y / y.norm());
      }
    }
  }
  if (!converged) {
    throw NumericalError("shift-invert Arnoldi did not converge " + describe(op, wave));
  }

  SpectrumResult r = make_result(wave, rho, xi, N, op.diagonal());
  const auto& theta = small.eigenvalues();
  const int want = std::min(count, used);
  Eigen::VectorXcd ax(n);
  for (int t = 0; t < want; ++t) {
    const cplx mu = theta[order[t]];
    const cplx lambda = shift + 1.0 / mu;
    Eigen::VectorXcd x = V.leftCols(used) * small.eigenvectors().col(order[t]);
    op.apply(x, ax);
    r.residual_estimate = std::max(r.residual_estimate, (ax - lambda * x).norm() / x.norm());
    r.eigenvalues.push_back(lambda);
  }
  finish(r);
  return r;
}

double max_growth_rate(const StokesWave& wave, double rho, double xi, int N) {
  return eig_dense(assemble_operator(wave, rho, xi, N)).max_real;
}

double max_growth_rate(const ModelSpec& model, double k, double eps, double rho, double xi,
                       int N) {
  return max_growth_rate(make_wave(model, k, eps), rho, xi, N);
}

}  // namespace transpec
