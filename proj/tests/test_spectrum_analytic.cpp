#include <gtest/gtest.h>

#include <cmath>

#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "transpec/errors.hpp"
#include "transpec/spectrum_analytic.hpp"

using namespace transpec;

namespace {

ModelSpec random_model(prop::Gen& gen) {
  const auto& ids = model_ids();
  const std::string id = ids[gen.integer(0, 6)];
  return make_model(id, gen.log_uniform(0.1, 5.0), gen.sign() * gen.log_uniform(0.1, 5.0),
                    gen.uniform(0.6, 2.5));
}

// <B0 e^{ipz}, e^{ipz}> through a sampled DFT of the periodic part e^{inz}.
double krein_quadratic_form(const ModelSpec& m, int n, double rho, double xi, double k) {
  const int M = 32;
  std::vector<oracle::cplx> g(M);
  for (int j = 0; j < M; ++j) g[j] = std::polar(1.0, n * 2.0 * M_PI * j / M);
  auto coeffs = oracle::dft(g);
  const double c0 = m.gamma() / (k * k) + m.jhat(k);
  for (int s = 0; s < M; ++s) {
    const double p = oracle::freq(s, M) + xi;
    const double mult = p == 0.0 ? 0.0
                                 : k * k * (c0 - m.jhat(k * p)) -
                                       (m.gamma() + rho * rho) / (p * p);
    coeffs[s] *= mult;
  }
  const auto bg = oracle::idft(coeffs);
  oracle::cplx acc = 0.0;
  for (int j = 0; j < M; ++j) acc += bg[j] * std::conj(g[j]);
  return (acc / static_cast<double>(M)).real();
}

double interval_end(const std::vector<Interval>& w, bool right) {
  EXPECT_EQ(w.size(), 1u);
  if (w.empty()) return NAN;
  return right ? w[0].hi : w[0].lo;
}

}  // namespace

TEST(Omega, Examples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  for (double k : {0.3, 1.0, 4.0}) EXPECT_EQ(omega(m, 1, 0.0, 0.0, k), 0.0);
  EXPECT_NEAR(omega(m, 2, 1.0, 0.0, 1.0), -5.0, 1e-14);
  EXPECT_THROW(omega(m, 0, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(omega(m, 1, 1.0, 0.0, 0.0), DomainError);
}

TEST(Krein, Examples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  EXPECT_EQ(krein_signature(m, 1, 0.0, 0.0, 1.0), 0);
  EXPECT_EQ(krein_signature(m, 2, 1.0, 0.0, 1.0), -1);
  EXPECT_THROW(krein_signature(m, 0, 1.0, 0.0, 1.0), DomainError);
}

TEST(OmegaProperty, MatchesExplicitRmkpPolynomial) {
  prop::Gen gen(101);
  for (int t = 0; t < 10000; ++t) {
    const double gamma = gen.log_uniform(0.01, 10), beta = gen.sign() * gen.log_uniform(0.01, 10);
    const ModelSpec m = make_model("rmkp", gamma, beta);
    const int n = gen.nonzero(-8, 8);
    const double xi = gen.coin() ? 0.0 : gen.uniform(-0.5, 0.5);
    const double rho = gen.uniform(0, 5), k = gen.log_uniform(0.05, 5);
    const double want = oracle::rmkp_omega(gamma, beta, k, n + xi, rho);
    const double scale = gamma * (std::abs(n + xi) + 1 / std::abs(n + xi)) +
                         std::abs(beta) * std::pow(k, 4) * (std::abs(n + xi) + std::pow(std::abs(n + xi), 3)) +
                         rho * rho / std::abs(n + xi);
    ASSERT_NEAR(omega(m, n, rho, xi, k), want, 1e-12 * scale) << "trial " << t;
  }
}

TEST(OmegaProperty, OddSymmetry) {
  prop::Gen gen(102);
  for (int t = 0; t < 2000; ++t) {
    const ModelSpec m = random_model(gen);
    const int n = gen.integer(-8, 8);
    const double xi = gen.uniform(-0.49, 0.5);
    if (n + xi == 0.0) continue;
    const double rho = gen.uniform(0, 3), k = gen.log_uniform(0.1, 4);
    ASSERT_EQ(omega(m, n, rho, xi, k) + omega(m, -n, rho, -xi, k), 0.0)
        << m.id() << " trial " << t;
  }
}

TEST(KreinProperty, QuadraticFormOracle) {
  prop::Gen gen(103);
  int checked = 0;
  for (int t = 0; checked < 500; ++t) {
    const ModelSpec m = random_model(gen);
    const int n = gen.integer(-6, 6);
    const double xi = gen.coin() ? 0.0 : gen.uniform(-0.49, 0.5);
    if (n + xi == 0.0) continue;
    const double rho = gen.uniform(0, 3), k = gen.log_uniform(0.2, 3);
    const double w = omega(m, n, rho, xi, k);
    if (std::abs(w / (n + xi)) < 1e-9) continue;
    const double q = krein_quadratic_form(m, n, rho, xi, k);
    ASSERT_NEAR(q, w / (n + xi), 1e-9 * (1 + std::abs(q))) << m.id() << " trial " << t;
    ASSERT_EQ(krein_signature(m, n, rho, xi, k), q > 0 ? 1 : -1) << m.id() << " trial " << t;
    ++checked;
  }
}

TEST(Collision, Examples) {
  prop::Gen gen(104);
  for (int t = 0; t < 100; ++t) {
    const ModelSpec m = make_model("rmkp", gen.log_uniform(0.1, 10), gen.sign() * gen.log_uniform(0.1, 10));
    EXPECT_EQ(collision_rho_squared(m, -1, 1, 0.0, gen.log_uniform(0.05, 10)), 0.0);
  }
  EXPECT_NEAR(collision_rho_squared(make_model("rmkp", 1, 1), -1, 0, 0.5, 2.0), 2.25, 1e-13);
  const ModelSpec m = make_model("rmkp", 1, 1);
  EXPECT_THROW(collision_rho_squared(m, 1, 1, 0.0, 1.0), DomainError);
  EXPECT_THROW(collision_rho_squared(m, 0, 1, 0.0, 1.0), DomainError);
}

TEST(CollisionProperty, ClosedFormAgreesWithBisection) {
  prop::Gen gen(105);
  int checked = 0;
  while (checked < 1000) {
    const ModelSpec m = random_model(gen);
    const int n = gen.integer(-5, 5), m_idx = gen.integer(-5, 5);
    const double xi = gen.coin() ? 0.0 : gen.uniform(-0.49, 0.5);
    const double p = n + xi, q = m_idx + xi;
    if (p == 0.0 || q == 0.0 || n == m_idx) continue;
    const double k = gen.log_uniform(0.2, 2.0);
    auto om = [&](double pp, double s) {
      return m.gamma() * (pp - 1 / pp) + k * k * pp * (m.jhat(k) - m.jhat(k * pp)) - s / pp;
    };
    const double closed = collision_rho_squared(m, n, m_idx, xi, k);
    const double S = 1e7;
    auto f = [&](double s) { return om(p, s) - om(q, s); };
    ASSERT_LT(f(-S) * f(S), 0.0);
    const double bis = oracle::bisection(f, -S, S);
    const double scale = std::abs(p * q) * (std::abs(om(p, 0)) + std::abs(om(q, 0))) / std::abs(q - p);
    ASSERT_NEAR(closed, bis, 1e-10 * std::max({1.0, std::abs(bis), scale}))
        << m.id() << " n=" << n << " m=" << m_idx << " xi=" << xi << " k=" << k;
    ++checked;
  }
}

TEST(CollisionProperty, RmkpSignFunctionEquivalence) {
  prop::Gen gen(106);
  for (int t = 0; t < 10000; ++t) {
    const double gamma = gen.log_uniform(0.1, 10), beta = gen.sign() * gen.log_uniform(0.1, 10);
    const ModelSpec m = make_model("rmkp", gamma, beta);
    const int theta = gen.integer(1, 7);
    const int n = gen.integer(-8, 6);
    const bool periodic = gen.coin();
    const double xi = periodic ? 0.0 : gen.uniform(1e-3, 0.5);
    if (periodic && (n == 0 || n + theta == 0)) continue;
    const double k = gen.log_uniform(0.05, 3);
    const double want = oracle::rmkp_collision(gamma, beta, k, n + xi, theta);
    const double got = collision_rho_squared(m, n, n + theta, xi, k);
    const double scale = gamma * (std::abs((n + xi) * (n + xi + theta)) + 1) +
                         std::abs(beta) * std::pow(k, 4) * (3 * std::pow((n + xi) * (n + xi + theta), 2) +
                                                            std::abs((n + xi) * (n + xi + theta)) * theta * theta);
    ASSERT_NEAR(got, want, 1e-11 * scale) << "trial " << t;
    if (std::abs(want) > 1e-9 * scale) {
      ASSERT_EQ(got > 0, want > 0) << "trial " << t;
    }
  }
}

TEST(CollisionProperty, ThetaOneBandCentre) {
  prop::Gen gen(107);
  for (int t = 0; t < 1000; ++t) {
    const double gamma = gen.log_uniform(0.1, 10), beta = gen.sign() * gen.log_uniform(0.1, 10);
    const double k = gen.log_uniform(0.1, 4), xi = gen.uniform(1e-3, 0.5);
    const double want = oracle::rmkp_band_rho2(gamma, beta, k, xi);
    EXPECT_NEAR(collision_rho_squared(make_model("rmkp", gamma, beta), -1, 0, xi, k), want,
                1e-12 * (gamma + std::abs(beta) * std::pow(k, 4)));
  }
}

TEST(CollisionWindow, WavenumberExamples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  auto w1 = collision_wavenumber_window(m, -2, 3, 0.0);
  EXPECT_EQ(interval_end(w1, false), 0.0);
  EXPECT_NEAR(interval_end(w1, true), 0.70711, 1e-5);
  auto w2 = collision_wavenumber_window(m, -5, 3, 0.0);
  EXPECT_NEAR(interval_end(w2, false), std::pow(11.0 / 380.0, 0.25), 1e-9);
  EXPECT_TRUE(std::isinf(interval_end(w2, true)));
  auto w3 = collision_wavenumber_window(m, -2, 3, 0.4);
  EXPECT_EQ(interval_end(w3, false), 0.0);
  EXPECT_NEAR(interval_end(w3, true), 0.811, 5e-3);
  EXPECT_THROW(collision_wavenumber_window(m, -2, 0, 0.0), ValidationError);
}

TEST(CollisionWindow, FloquetExamples) {
  const ModelSpec m = make_model("rmkp", 1, 1);
  auto w = collision_floquet_window(m, -4, 4, 0.2);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_GT(w[0].lo, 0.26);
  EXPECT_LT(w[0].lo, 0.29);
  EXPECT_EQ(w[0].hi, 0.5);
  EXPECT_LT(std::abs(collision_rho_squared(m, -4, 0, w[0].lo, 0.2)), 1e-8);
  // bisection oracle on the explicit polynomial
  const double left = oracle::bisection(
      [](double xi) { return oracle::rmkp_collision(1, 1, 0.2, -4 + xi, 4); }, 0.1, 0.4);
  EXPECT_NEAR(w[0].lo, left, 1e-9);

  for (double k : {0.1, 1.0, 3.0, 20.0}) {
    EXPECT_TRUE(collision_floquet_window(make_model("rmkp", 1, -1), 1, 1, k).empty()) << k;
  }
}

TEST(CollisionWindowProperty, EndpointsAreRoots) {
  prop::Gen gen(108);
  for (int t = 0; t < 60; ++t) {
    const ModelSpec m = random_model(gen);
    const int theta = gen.integer(1, 6);
    const int n = gen.integer(-theta - 2, 2);
    const double xi = gen.coin() ? 0.0 : gen.uniform(0.01, 0.5);
    if (n + xi == 0.0 || n + theta + xi == 0.0) continue;
    for (const Interval& w : collision_wavenumber_window(m, n, theta, xi)) {
      for (double e : {w.lo, w.hi}) {
        if (e == 0.0 || std::isinf(e)) continue;
        EXPECT_LT(std::abs(collision_rho_squared(m, n, n + theta, xi, e)), 1e-8)
            << m.id() << " n=" << n << " theta=" << theta << " xi=" << xi << " k=" << e;
      }
    }
  }
}

TEST(Enumerate, TableExamples) {
  const ModelSpec pos = make_model("rmkp", 1, 1);
  auto r2 = enumerate_potentially_unstable(pos, 2, Perturbation::Periodic);
  ASSERT_EQ(r2.size(), 1u);
  EXPECT_EQ(r2[0].n, -1);
  EXPECT_EQ(r2[0].m, 1);
  EXPECT_EQ(r2[0].rho_c, 0.0);
  EXPECT_TRUE(r2[0].long_wave);
  EXPECT_TRUE(r2[0].at_origin);

  EXPECT_TRUE(enumerate_potentially_unstable(pos, 1, Perturbation::Periodic).empty());
  EXPECT_TRUE(
      enumerate_potentially_unstable(make_model("rmkp", 1, -1), 1, Perturbation::Periodic).empty());

  auto r3 = enumerate_potentially_unstable(pos, 3, Perturbation::NonPeriodic);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_EQ(r3[0].n, -3);
  EXPECT_EQ(r3[0].m, 0);
  EXPECT_EQ(r3[1].n, -2);
  EXPECT_EQ(r3[1].m, 1);
  EXPECT_EQ(r3[2].n, -1);
  EXPECT_EQ(r3[2].m, 2);

  auto r1 = enumerate_potentially_unstable(pos, 1, Perturbation::NonPeriodic);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].n, -1);
  EXPECT_TRUE(enumerate_potentially_unstable(make_model("rmkp", 1, -1), 1, Perturbation::NonPeriodic)
                  .empty());
}

TEST(EnumerateProperty, RecordsSatisfyInvariants) {
  prop::Gen gen(109);
  for (int t = 0; t < 40; ++t) {
    const ModelSpec m = random_model(gen);
    const int theta = gen.integer(1, 5);
    const auto kind = gen.coin() ? Perturbation::Periodic : Perturbation::NonPeriodic;
    int prev_n = -1000;
    for (const auto& r : enumerate_potentially_unstable(m, theta, kind)) {
      EXPECT_GT(r.n, prev_n);
      prev_n = r.n;
      EXPECT_EQ(r.m - r.n, theta);
      EXPECT_LT((r.n + r.xi) * (r.m + r.xi), 0.0);
      EXPECT_TRUE(r.opposite_krein);
      if (kind == Perturbation::Periodic) {
        EXPECT_EQ(r.xi, 0.0);
      }
      const double wn = omega(m, r.n, r.rho_c, r.xi, r.k), wm = omega(m, r.m, r.rho_c, r.xi, r.k);
      EXPECT_NEAR(wn, wm, 1e-10 * std::max(1.0, std::abs(wn))) << m.id();
    }
  }
}

TEST(EnumerateProperty, SameSignPairsAreAbsent) {
  // n = 1, m = 2 collide for beta > 0 and large k, but carry equal Krein signs.
  const ModelSpec m = make_model("rmkp", 1, 1);
  ASSERT_GT(collision_rho_squared(m, 1, 2, 0.0, 5.0), 0.0);
  for (int theta = 1; theta <= 5; ++theta) {
    for (auto kind : {Perturbation::Periodic, Perturbation::NonPeriodic}) {
      for (const auto& r : enumerate_potentially_unstable(m, theta, kind)) EXPECT_LT(r.n, 0);
    }
  }
}

TEST(OriginCollision, Patterns) {
  EXPECT_TRUE(is_origin_collision(-1, 2, 0.0));
  EXPECT_TRUE(is_origin_collision(-2, 3, 0.5));
  EXPECT_FALSE(is_origin_collision(1, 1, 0.3));
  EXPECT_FALSE(is_origin_collision(-1, 2, 0.2));
  const ModelSpec m = make_model("rmkp", 1, 1);
  for (int theta = 1; theta <= 6; ++theta) {
    const int n = theta % 2 == 0 ? -theta / 2 : -(theta + 1) / 2;
    const double xi = theta % 2 == 0 ? 0.0 : 0.5;
    int real_collisions = 0;
    for (double k : {0.3, 0.9, 3.0}) {
      if (collision_rho_squared(m, n, n + theta, xi, k) < 0) continue;
      EXPECT_TRUE(make_collision_record(m, n, n + theta, xi, k).at_origin) << theta << " " << k;
      ++real_collisions;
    }
    EXPECT_GT(real_collisions, 0) << theta;
  }
}
