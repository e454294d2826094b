#include <gtest/gtest.h>

#include <cmath>

#include "support/gen.hpp"
#include "transpec/errors.hpp"
#include "transpec/stokes.hpp"

using namespace transpec;

namespace {

double fitted_slope(const StokesWave& base, bool drop_eta3) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 9;
  for (int i = 0; i < n; ++i) {
    StokesWave w = base;
    w.eps = std::pow(10.0, -3.0 + static_cast<double>(i) / (n - 1));
    if (drop_eta3) w.eta3 = 0.0;
    const double x = std::log(w.eps), y = std::log(residual_norm(w, 32));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(Stokes, PhaseSpeedExamples) {
  EXPECT_DOUBLE_EQ(phase_speed_c0(make_model("rmkp", 1, 1), 2.0), 4.25);
  EXPECT_NEAR(phase_speed_c0(make_model("rmilw-kp", 1, 1), 1.0), 2.3130, 5e-5);
  const ModelSpec m = make_model("rmkp", 1, 1);
  EXPECT_NEAR(phase_speed_c0(m, 1e3) / 1e6, 1.0, 1e-9);
  EXPECT_THROW(phase_speed_c0(m, 0.0), DomainError);
  EXPECT_THROW(phase_speed_c0(m, -1.0), DomainError);
}

TEST(Stokes, ResonantWavenumbers) {
  const auto r = resonant_wavenumbers(make_model("rmkp", 1, 1), 0.6, 0.8, 2);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].n, 2);
  EXPECT_NEAR(r[0].k, std::pow(0.25, 0.25), 1e-12);
  EXPECT_LT(r[0].residual, 1e-10);

  const auto all = resonant_wavenumbers(make_model("rmkp", 1, 1), 0.1, 10.0, 6);
  ASSERT_EQ(all.size(), 5u);
  for (const auto& res : all) EXPECT_NEAR(res.k, 1.0 / std::sqrt(res.n), 1e-12);

  EXPECT_TRUE(resonant_wavenumbers(make_model("rm-whitham-kp", 1, 1), 1e-3, 1e3, 10).empty());
  EXPECT_TRUE(resonant_wavenumbers(make_model("rmkp", 1, -1), 1e-3, 1e3, 10).empty());
  EXPECT_THROW(resonant_wavenumbers(make_model("rmkp"), 1.0, 0.5, 3), ValidationError);
}

TEST(Stokes, CoefficientExamples) {
  const StokesCoefficients a = stokes_coefficients(make_model("rmkp", 1, 1), 1.0);
  EXPECT_NEAR(a.eta2, -2.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(a.c2, a.eta2);

  const StokesCoefficients b = stokes_coefficients(make_model("rm-mkdv-kp", 1, 1), 1.3);
  EXPECT_EQ(b.eta2, 0.0);
  EXPECT_EQ(b.c2, -0.75);

  const StokesCoefficients g = stokes_coefficients(make_model("rmg-kp", 1, 1), 1.0);
  EXPECT_NEAR(g.eta2, -2.0 / 9.0, 1e-15);
  EXPECT_NEAR(g.c2, -2.0 / 9.0 - 0.75, 1e-15);
}

TEST(Stokes, ResonanceProximityNamesTheResonance) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  const double k2 = std::pow(0.25, 0.25);
  try {
    stokes_coefficients(m, k2 + 5e-7);
    FAIL() << "expected ResonanceError";
  } catch (const ResonanceError& e) {
    EXPECT_EQ(e.harmonic(), 2);
    EXPECT_NEAR(e.k(), k2, 1e-12);
  }
  EXPECT_THROW(stokes_coefficients(m, 0.5), ResonanceError);
  EXPECT_NO_THROW(stokes_coefficients(m, k2 + 1e-5));
  StokesOptions loose;
  loose.resonance_tolerance = 1e-9;
  EXPECT_NO_THROW(stokes_coefficients(m, k2 + 1e-7, loose));
  EXPECT_THROW(make_wave(m, 0.0, 0.01), DomainError);
}

TEST(Stokes, ProfileExamples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  const StokesWave zero = make_wave(m, 1.0, 0.0);
  for (double z : {0.0, 0.3, 2.0}) EXPECT_EQ(wave_profile(zero, z), 0.0);

  const StokesWave w = make_wave(m, 1.0, 0.1);
  EXPECT_NEAR(wave_profile(w, M_PI / 2), -0.01 * w.eta2, 1e-15);
  EXPECT_NEAR(wave_profile(w, 0.0), 0.1 + 0.01 * (-2.0 / 9.0) + 1e-3 * w.eta3, 1e-15);
  EXPECT_DOUBLE_EQ(w.speed(), w.c0 + 0.01 * w.c2);
}

TEST(Stokes, ResidualExamples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  EXPECT_EQ(residual_norm(make_wave(m, 1.0, 0.0), 32), 0.0);
  const StokesWave w = make_wave(m, 1.0, 0.01);
  EXPECT_GE(fitted_slope(w, false), 3.9);
  const double ablated = fitted_slope(w, true);
  EXPECT_NEAR(ablated, 3.0, 0.1);
  EXPECT_THROW(residual_norm(w, 8), ValidationError);
}

TEST(Stokes, AmplitudeWarning) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  EXPECT_FALSE(amplitude_warning(make_wave(m, 1.0, 0.01)));
  EXPECT_TRUE(amplitude_warning(make_wave(m, 1.0, 0.1)));
}

TEST(StokesProperty, ResidualIsFourthOrder) {
  for (const auto& id : model_ids()) {
    const ModelSpec m = make_model(id, 1.0, 1.0, 1.5);
    ASSERT_FALSE(nearby_resonance(m, 1.3).has_value()) << id;
    const double slope = fitted_slope(make_wave(m, 1.3, 0.01), false);
    if (m.alpha1() == 1) {
      EXPECT_GE(slope, 3.8) << id;
      EXPECT_LE(slope, 4.3) << id;
    } else {
      // only odd harmonics: the leading residual is one order higher
      EXPECT_GE(slope, 3.9) << id;
    }
  }
}

TEST(StokesProperty, ProfileIsEvenAndMeanZero) {
  prop::Gen gen(11);
  const ModelSpec m = make_model("rmg-kp", 1, 1);
  for (int t = 0; t < 200; ++t) {
    const StokesWave w = make_wave(m, gen.uniform(0.8, 3.0), gen.uniform(-0.1, 0.1));
    const double z = gen.uniform(-10, 10);
    EXPECT_EQ(wave_profile(w, z) - wave_profile(w, -z), 0.0);
    double mean = 0.0;
    const int M = 64;
    for (int j = 0; j < M; ++j) mean += wave_profile(w, 2 * M_PI * j / M);
    EXPECT_NEAR(mean / M, 0.0, 1e-15);
    StokesWave flipped = w;
    flipped.eps = -w.eps;
    EXPECT_EQ(flipped.speed(), w.speed());
  }
}

TEST(StokesProperty, RmkpCoefficientsMatchExplicitFormulas) {
  prop::Gen gen(3);
  for (int t = 0; t < 100; ++t) {
    const double gamma = gen.log_uniform(0.1, 10), beta = gen.sign() * gen.log_uniform(0.1, 10);
    const ModelSpec m = make_model("rmkp", gamma, beta);
    double k = gen.log_uniform(0.1, 5);
    while (nearby_resonance(m, k, {1e-3, 10})) k *= 1.01;
    const StokesCoefficients c = stokes_coefficients(m, k);
    const double k4 = std::pow(k, 4);
    const double eta2 = 2 * k * k / (3 * gamma - 12 * beta * k4);
    const double eta3 = 9 * k * k * eta2 / (8 * gamma - 72 * beta * k4);
    EXPECT_NEAR(c.eta2, eta2, 1e-13 * std::abs(eta2)) << "trial " << t;
    EXPECT_NEAR(c.eta3, eta3, 1e-12 * std::abs(eta3)) << "trial " << t;
    EXPECT_EQ(c.c2 - m.alpha1() * c.eta2 - 0.75 * m.alpha2(), 0.0);
    EXPECT_NEAR(phase_speed_c0(m, k), gamma / (k * k) + beta * k * k, 1e-13 * (gamma / (k * k) + std::abs(beta) * k * k));
  }
}
