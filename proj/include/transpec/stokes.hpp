#pragma once

#include <optional>
#include <vector>

#include "transpec/model.hpp"

namespace transpec {

struct StokesOptions {
  double resonance_tolerance = 1e-6;
  int max_harmonic = 10;
};

struct StokesCoefficients {
  double eta2;
  double eta3;
  double c2;
};

// eta(z) = eps cos z + eps^2 eta2 cos 2z + eps^3 eta3 cos 3z travelling with
// speed c0 + eps^2 c2.
struct StokesWave {
  ModelSpec model;
  double k;
  double eps;
  double eta2;
  double eta3;
  double c0;
  double c2;

  double speed() const { return c0 + eps * eps * c2; }
  // Cosine coefficients a_1..a_3 of the profile.
  double cos_coefficient(int n) const;
};

struct Resonance {
  double k;
  int n;
  double residual;
};

double phase_speed_c0(const ModelSpec& model, double k);

// k^2 (jhat(kn) - jhat(k)) - gamma (n^2 - 1)/n^2
double resonance_function(const ModelSpec& model, double k, int n);

std::vector<Resonance> resonant_wavenumbers(const ModelSpec& model, double k_lo, double k_hi,
                                            int n_max);

// First harmonic 2..max_harmonic whose resonance curve changes sign inside
// [k - tol, k + tol].
std::optional<Resonance> nearby_resonance(const ModelSpec& model, double k,
                                          const StokesOptions& opts = {});

// Throws ResonanceError near a resonance and DomainError for k <= 0.
StokesCoefficients stokes_coefficients(const ModelSpec& model, double k,
                                       const StokesOptions& opts = {});

StokesWave make_wave(const ModelSpec& model, double k, double eps,
                     const StokesOptions& opts = {});

double wave_profile(const StokesWave& wave, double z);

// L2 norm of the travelling-wave residual evaluated exactly on Fourier modes
// |n| <= N (the three-harmonic profile needs 9).
double residual_norm(const StokesWave& wave, int N);
double residual_norm(const ModelSpec& model, const StokesWave& wave, int N);

// True when the O(eps^4) residual left by the truncated expansion exceeds
// 1e-6 times the L2 size of the profile.
bool amplitude_warning(const StokesWave& wave);

}  // namespace transpec
