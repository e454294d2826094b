#include "transpec/spectrum_analytic.hpp"

#include <cmath>
#include <limits>

#include "transpec/errors.hpp"
#include "transpec/roots.hpp"

namespace transpec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber k must be finite and > 0");
}

// rho-independent part of Omega at p = n + xi.
double dispersion_part(const ModelSpec& model, double p, double k) {
  return model.gamma() * (p - 1.0 / p) + k * k * p * (model.jhat(k) - model.jhat(k * p));
}

double representative_k(const Interval& w) {
  if (w.lo == 0.0) return std::isinf(w.hi) ? 1.0 : 0.5 * w.hi;
  if (std::isinf(w.hi)) return 2.0 * w.lo;
  return std::sqrt(w.lo * w.hi);
}

bool vanishes_identically(const ModelSpec& model, int n, int m, double xi,
                          const WindowOptions& opts) {
  const double p = n + xi, q = m + xi;
  for (double k : roots::log_space(opts.k_min, opts.k_max, 17)) {
    const double ap = dispersion_part(model, p, k), aq = dispersion_part(model, q, k);
    const double scale = std::abs(p * q) * (std::abs(ap) + std::abs(aq)) / std::abs(q - p);
    if (std::abs(collision_rho_squared(model, n, m, xi, k)) > 1e-12 * std::max(scale, 1e-300) &&
        scale > 0.0) {
      return false;
    }
  }
  return true;
}

}  // namespace

double omega(const ModelSpec& model, int n, double rho, double xi, double k) {
  require_positive_k(k);
  const double p = n + xi;
  if (p == 0.0) throw DomainError("mode n + xi = 0 has no frequency");
  return dispersion_part(model, p, k) - rho * rho / p;
}

int krein_signature(const ModelSpec& model, int n, double rho, double xi, double k) {
  const double w = omega(model, n, rho, xi, k) / (n + xi);
  return w > 0.0 ? 1 : (w < 0.0 ? -1 : 0);
}

double collision_rho_squared(const ModelSpec& model, int n, int m, double xi, double k) {
  require_positive_k(k);
  const double p = n + xi, q = m + xi;
  if (p == q) throw DomainError("collision needs two distinct modes");
  if (p == 0.0 || q == 0.0) throw DomainError("collision mode with n + xi = 0");
  return p * q * (dispersion_part(model, p, k) - dispersion_part(model, q, k)) / (q - p);
}

std::vector<Interval> collision_wavenumber_window(const ModelSpec& model, int n, int theta,
                                                  double xi, const WindowOptions& opts) {
  if (theta < 1) throw ValidationError("theta must be >= 1");
  const auto grid = roots::log_space(opts.k_min, opts.k_max, opts.brackets + 1);
  auto f = [&](double k) { return collision_rho_squared(model, n, n + theta, xi, k); };
  std::vector<Interval> out;
  for (const auto& r : roots::positive_runs(f, grid)) {
    out.push_back({r.lo_at_boundary ? 0.0 : r.lo, r.hi_at_boundary ? kInf : r.hi});
  }
  return out;
}

std::vector<Interval> collision_floquet_window(const ModelSpec& model, int n, int theta, double k,
                                               int brackets) {
  if (theta < 1) throw ValidationError("theta must be >= 1");
  require_positive_k(k);
  std::vector<double> grid(brackets + 1);
  grid[0] = 1e-9;
  for (int i = 1; i <= brackets; ++i) grid[i] = 0.5 * i / brackets;
  auto f = [&](double xi) {
    const double p = n + xi, q = n + theta + xi;
    if (p == 0.0 || q == 0.0) return -1.0;
    return collision_rho_squared(model, n, n + theta, xi, k);
  };
  std::vector<Interval> out;
  for (const auto& r : roots::positive_runs(f, grid)) {
    out.push_back({r.lo_at_boundary ? 0.0 : r.lo, r.hi});
  }
  return out;
}

CollisionRecord make_collision_record(const ModelSpec& model, int n, int m, double xi, double k) {
  const double s = collision_rho_squared(model, n, m, xi, k);
  CollisionRecord r{};
  r.n = n;
  r.m = m;
  r.xi = xi;
  r.k = k;
  r.rho_c = std::sqrt(std::max(s, 0.0));
  r.omega_c = omega(model, n, r.rho_c, xi, k);
  r.krein_n = krein_signature(model, n, r.rho_c, xi, k);
  r.krein_m = krein_signature(model, m, r.rho_c, xi, k);
  r.opposite_krein = (n + xi) * (m + xi) < 0.0;
  const double scale = std::abs(dispersion_part(model, n + xi, k)) + std::abs(s / (n + xi));
  r.at_origin = std::abs(r.omega_c) < 1e-10 * std::max(1.0, scale);
  r.long_wave = false;
  return r;
}

const char* to_string(Perturbation p) {
  return p == Perturbation::Periodic ? "periodic" : "nonperiodic";
}

std::vector<CollisionRecord> enumerate_potentially_unstable(const ModelSpec& model, int theta,
                                                            Perturbation perturbation,
                                                            const EnumerateOptions& opts) {
  if (theta < 1) throw ValidationError("theta must be >= 1");
  std::vector<CollisionRecord> out;

  // Returns the k at which (n, m, xi) collides with rho^2 > 0, if any.
  auto find_k = [&](int n, int m, double xi) -> std::optional<double> {
    if (opts.k) {
      if (collision_rho_squared(model, n, m, xi, *opts.k) > 0.0) return *opts.k;
      return std::nullopt;
    }
    const auto windows = collision_wavenumber_window(model, n, m - n, xi, opts.window);
    if (windows.empty()) return std::nullopt;
    return representative_k(windows.front());
  };

  if (perturbation == Perturbation::Periodic) {
    for (int n = -theta + 1; n <= -1; ++n) {
      const int m = n + theta;
      if (vanishes_identically(model, n, m, 0.0, opts.window)) {
        CollisionRecord r = make_collision_record(model, n, m, 0.0, opts.k.value_or(1.0));
        r.rho_c = 0.0;
        r.long_wave = true;
        out.push_back(r);
      } else if (auto k = find_k(n, m, 0.0)) {
        out.push_back(make_collision_record(model, n, m, 0.0, *k));
      }
    }
  } else {
    for (int n = -theta; n <= -1; ++n) {
      const int m = n + theta;
      for (int i = 1; i <= opts.xi_samples; ++i) {
        const double xi = 0.5 * i / opts.xi_samples;
        if (vanishes_identically(model, n, m, xi, opts.window)) {
          CollisionRecord r = make_collision_record(model, n, m, xi, opts.k.value_or(1.0));
          r.rho_c = 0.0;
          r.long_wave = true;
          out.push_back(r);
          break;
        }
        if (auto k = find_k(n, m, xi)) {
          out.push_back(make_collision_record(model, n, m, xi, *k));
          break;
        }
      }
    }
  }
  return out;
}

bool is_origin_collision(int n, int theta, double xi) {
  if (theta % 2 == 0) return n == -theta / 2 && xi == 0.0;
  return n == -(theta + 1) / 2 && std::abs(xi - 0.5) < 1e-12;
}

}  // namespace transpec
