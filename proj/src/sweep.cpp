#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "transpec/errors.hpp"
#include "transpec/spectrum_numeric.hpp"

namespace transpec {

namespace {

SweepPoint sweep_point(const StokesWave& wave, double rho, double xi, int N) {
  SweepPoint p{rho, xi, false, {}, {}};
  try {
    p.result = eig_dense(assemble_operator(wave, rho, xi, N));
    p.ok = true;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

void check_grids(const std::vector<double>& rho_grid, const std::vector<double>& xi_grid) {
  if (rho_grid.empty() || xi_grid.empty()) throw ValidationError("sweep grids must be non-empty");
  for (double r : rho_grid) {
    if (!std::isfinite(r)) throw ValidationError("rho grid contains a non-finite value");
  }
  for (double x : xi_grid) {
    if (!std::isfinite(x)) throw ValidationError("xi grid contains a non-finite value");
  }
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TRANSPEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<SweepPoint> sweep_serial(const StokesWave& wave, const std::vector<double>& rho_grid,
                                     const std::vector<double>& xi_grid, int N) {
  check_grids(rho_grid, xi_grid);
  std::vector<SweepPoint> out;
  out.reserve(rho_grid.size() * xi_grid.size());
  for (double rho : rho_grid) {
    for (double xi : xi_grid) out.push_back(sweep_point(wave, rho, xi, N));
  }
  return out;
}

std::vector<SweepPoint> sweep(const StokesWave& wave, const std::vector<double>& rho_grid,
                              const std::vector<double>& xi_grid, int N, int threads) {
  check_grids(rho_grid, xi_grid);
  const long nx = static_cast<long>(xi_grid.size());
  const long total = static_cast<long>(rho_grid.size()) * nx;
  std::vector<SweepPoint> out(total);
  const int nthreads = resolve_threads(threads);
  (void)nthreads;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long i = 0; i < total; ++i) {
    out[i] = sweep_point(wave, rho_grid[i / nx], xi_grid[i % nx], N);
  }
  return out;
}

std::vector<Bubble> detect_bubbles(const std::vector<SweepPoint>& points,
                                   const BubbleOptions& opts) {
  struct Hit {
    double im;
    double re;
    double xi;
    double rho;
  };
  std::vector<Hit> hits;
  for (const auto& p : points) {
    if (!p.ok) continue;
    const double thr = opts.threshold > 0.0
                           ? opts.threshold
                           : 10.0 * std::numeric_limits<double>::epsilon() * p.result.scale;
    for (const cplx& z : p.result.eigenvalues) {
      if (z.real() > thr) hits.push_back({z.imag(), z.real(), p.xi, p.rho});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.im < b.im; });
  std::vector<Bubble> out;
  std::size_t i = 0;
  while (i < hits.size()) {
    std::size_t j = i;
    while (j + 1 < hits.size() && hits[j + 1].im - hits[j].im <= opts.gap) ++j;
    Bubble b{0.0, 0.0, hits[i].xi, hits[i].xi, hits[i].rho};
    double sum = 0.0;
    for (std::size_t t = i; t <= j; ++t) {
      sum += hits[t].im;
      b.xi_lo = std::min(b.xi_lo, hits[t].xi);
      b.xi_hi = std::max(b.xi_hi, hits[t].xi);
      if (hits[t].re > b.max_growth) {
        b.max_growth = hits[t].re;
        b.rho = hits[t].rho;
      }
    }
    b.center = cplx(0.0, sum / static_cast<double>(j - i + 1));
    out.push_back(b);
    i = j + 1;
  }
  return out;
}

}  // namespace transpec
