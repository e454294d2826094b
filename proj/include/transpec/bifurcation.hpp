#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transpec/model.hpp"

namespace transpec {

enum class Outcome { Unstable, Stable, Inconclusive };
const char* to_string(Outcome o);

struct Condition {
  std::string description;
  bool satisfied;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::string criterion;  // which reduced analysis produced the decision
  std::map<std::string, double> thresholds;
  std::vector<Condition> conditions;
};

// Leading-order eigenvalue of the reduced 2x2 long-wavelength problem:
// lambda^2 = -rho^2 (rho^2 + (3/2) a2 k^2 eps^2 + 2 a1 k^2 eps^2 eta2).
double long_wavelength_lambda2(const ModelSpec& model, double k, double eps, double rho);

// (3/2) a2 + 2 a1 eta2(k); negative means long-wavelength instability.
double long_wavelength_indicator(const ModelSpec& model, double k);

struct Threshold {
  enum class Kind { Zero, Pole };
  double k;
  Kind kind;
};

// Wavenumbers where the long-wavelength indicator changes sign, either by
// crossing zero or across the pole of eta2 at the second-harmonic resonance.
std::vector<Threshold> long_wavelength_thresholds(const ModelSpec& model, double k_min = 1e-3,
                                                  double k_max = 1e3);

Verdict long_wavelength_verdict(const ModelSpec& model, double k);

struct Theta1Band {
  double xi;
  double rho_c2;
  double halfwidth;
  double omega_c;
  double growth_peak;
  bool present() const { return rho_c2 > 0.0; }
};

// Collision of the modes n = -1 and n = 0 at Floquet exponent xi.
Theta1Band theta1_band(const ModelSpec& model, double k, double eps, double xi);

// max over xi in (1e-4, 1/2] of the (-1, 0) collision rho^2, with its argmax.
std::pair<double, double> theta1_max_rho2(const ModelSpec& model, double k);

Verdict theta1_verdict(const ModelSpec& model, double k);

// Smallest sign change of the maximal (-1, 0) collision rho^2 in k.
std::optional<double> theta1_threshold(const ModelSpec& model, double k_min = 1e-3,
                                       double k_max = 1e3);

// Leading terms of the discriminant for a theta >= 2 collision; beta2 is the
// undetermined expansion coefficient and only enters squared.
double theta_ge2_disc(int n, int theta, double xi, double varsigma, double eps, double beta2,
                      double k);

enum class AtlasColumn {
  LongWavePeriodicBetaPos,
  LongWavePeriodicBetaNonPos,
  LongWaveNonPeriodic,
  FiniteWavePeriodic,
  FiniteWaveNonPeriodicBetaPos,
  FiniteWaveNonPeriodicBetaNonPos,
};
inline constexpr std::size_t kAtlasColumns = 6;
const char* column_label(AtlasColumn c);

struct AtlasRow {
  std::string model_id;
  std::string label;
  std::array<Verdict, kAtlasColumns> cells;
};

struct AtlasOptions {
  double k_min = 1e-3;
  double k_max = 1e3;
  int k_samples = 256;
  int max_theta = 6;
};

// Existence verdicts ("unstable for some k > 0") per perturbation class. The
// sign of each model's beta is overridden by the column; |beta| is kept.
std::vector<AtlasRow> atlas(const std::vector<ModelSpec>& models, const AtlasOptions& opts = {});

// The six named models of the stability table with gamma = 1, beta = 1 and
// fractional exponent 1.5.
std::vector<ModelSpec> default_atlas_models();

// Both per-k verdicts merged into one record.
Verdict classify(const ModelSpec& model, double k);

}  // namespace transpec
