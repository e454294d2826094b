#include "transpec/stokes.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "transpec/errors.hpp"
#include "transpec/roots.hpp"

namespace transpec {

namespace {

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber k must be finite and > 0");
}

// Two-sided coefficient vector on -M..M stored at offset M.
struct Series {
  int M;
  std::vector<double> c;
  explicit Series(int m) : M(m), c(2 * m + 1, 0.0) {}
  double& at(int n) { return c[n + M]; }
  double get(int n) const { return (n < -M || n > M) ? 0.0 : c[n + M]; }
};

Series convolve(const Series& a, const Series& b) {
  Series out(a.M + b.M);
  for (int i = -a.M; i <= a.M; ++i) {
    if (a.get(i) == 0.0) continue;
    for (int j = -b.M; j <= b.M; ++j) out.at(i + j) += a.get(i) * b.get(j);
  }
  return out;
}

}  // namespace

double StokesWave::cos_coefficient(int n) const {
  switch (n) {
    case 1: return eps;
    case 2: return eps * eps * eta2;
    case 3: return eps * eps * eps * eta3;
    default: return 0.0;
  }
}

double phase_speed_c0(const ModelSpec& model, double k) {
  require_positive_k(k);
  return model.jhat(k) + model.gamma() / (k * k);
}

double resonance_function(const ModelSpec& model, double k, int n) {
  const double nn = static_cast<double>(n) * n;
  return k * k * (model.jhat(k * n) - model.jhat(k)) - model.gamma() * (nn - 1.0) / nn;
}

std::vector<Resonance> resonant_wavenumbers(const ModelSpec& model, double k_lo, double k_hi,
                                            int n_max) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo)) throw ValidationError("k range must satisfy 0 < lo < hi");
  if (n_max < 2) throw ValidationError("n_max must be at least 2");
  const auto grid = roots::log_space(k_lo, k_hi, 513);
  std::vector<Resonance> out;
  for (int n = 2; n <= n_max; ++n) {
    auto f = [&](double k) { return resonance_function(model, k, n); };
    for (double k : roots::sign_changes(f, grid)) {
      const double r = std::abs(f(k));
      if (r < 1e-10 * std::max(1.0, k * k * std::abs(model.jhat(k * n)))) out.push_back({k, n, r});
    }
  }
  return out;
}

std::optional<Resonance> nearby_resonance(const ModelSpec& model, double k,
                                          const StokesOptions& opts) {
  const double tol = opts.resonance_tolerance;
  const double lo = std::max(k - tol, 0.5 * k);
  const double hi = k + tol;
  for (int n = 2; n <= opts.max_harmonic; ++n) {
    const double flo = resonance_function(model, lo, n);
    const double fhi = resonance_function(model, hi, n);
    if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) != (fhi > 0.0)) {
      auto f = [&](double x) { return resonance_function(model, x, n); };
      const double root = flo == 0.0 ? lo : (fhi == 0.0 ? hi : roots::bisect(f, lo, hi, flo));
      return Resonance{root, n, std::abs(f(root))};
    }
  }
  return std::nullopt;
}

StokesCoefficients stokes_coefficients(const ModelSpec& model, double k,
                                       const StokesOptions& opts) {
  require_positive_k(k);
  if (auto res = nearby_resonance(model, k, opts)) {
    std::ostringstream os;
    os.precision(9);
    os << "k=" << k << " is within " << opts.resonance_tolerance
       << " of the resonant wavenumber k=" << res->k << " (harmonic n=" << res->n << ")";
    throw ResonanceError(res->k, res->n, os.str());
  }
  const double g = model.gamma();
  const double k2 = k * k;
  const double a1 = model.alpha1();
  const double a2 = model.alpha2();
  const double j1 = model.jhat(k);
  const double eta2 = 2.0 * a1 * k2 / (3.0 * g + 4.0 * k2 * (j1 - model.jhat(2.0 * k))) + 0.0;
  const double eta3 = (9.0 * a1 * k2 * eta2 + 2.25 * a2 * k2) /
                      (8.0 * g + 9.0 * k2 * (j1 - model.jhat(3.0 * k)));
  const double c2 = a1 * eta2 + 0.75 * a2 + 0.0;
  return {eta2, eta3, c2};
}

StokesWave make_wave(const ModelSpec& model, double k, double eps, const StokesOptions& opts) {
  if (!std::isfinite(eps)) throw ValidationError("amplitude eps must be finite");
  const StokesCoefficients s = stokes_coefficients(model, k, opts);
  return StokesWave{model, k, eps, s.eta2, s.eta3, phase_speed_c0(model, k), s.c2};
}

double wave_profile(const StokesWave& w, double z) {
  return w.cos_coefficient(1) * std::cos(z) + w.cos_coefficient(2) * std::cos(2.0 * z) +
         w.cos_coefficient(3) * std::cos(3.0 * z);
}

double residual_norm(const ModelSpec& model, const StokesWave& w, int N) {
  if (N < 16) throw ValidationError("residual needs N >= 16");
  Series eta(3);
  for (int n = 1; n <= 3; ++n) {
    eta.at(n) = 0.5 * w.cos_coefficient(n);
    eta.at(-n) = eta.at(n);
  }
  const Series sq = convolve(eta, eta);
  const Series cube = convolve(sq, eta);
  const double k2 = w.k * w.k;
  const double c = w.speed();
  double sum = 0.0;
  for (int n = -N; n <= N; ++n) {
    const double e = eta.get(n);
    const double nn = static_cast<double>(n) * n;
    const double f = k2 * nn * (c * e - model.jhat(w.k * n) * e - model.alpha1() * sq.get(n) -
                                model.alpha2() * cube.get(n)) -
                     model.gamma() * e;
    sum += f * f;
  }
  return std::sqrt(sum);
}

double residual_norm(const StokesWave& wave, int N) { return residual_norm(wave.model, wave, N); }

bool amplitude_warning(const StokesWave& w) {
  double size = 0.0;
  for (int n = 1; n <= 3; ++n) size += 0.5 * w.cos_coefficient(n) * w.cos_coefficient(n);
  return residual_norm(w, 16) > 1e-6 * std::sqrt(size);
}

}  // namespace transpec
