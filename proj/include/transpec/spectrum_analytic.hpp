#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transpec/model.hpp"

namespace transpec {

// Frequency of the unperturbed mode e^{i(n+xi)z} at transverse wavenumber rho.
double omega(const ModelSpec& model, int n, double rho, double xi, double k);

// sgn(Omega / (n + xi)).
int krein_signature(const ModelSpec& model, int n, double rho, double xi, double k);

// rho^2 at which Omega_n and Omega_m coincide; negative means no real collision.
double collision_rho_squared(const ModelSpec& model, int n, int m, double xi, double k);

struct Interval {
  double lo;
  double hi;  // +inf when unbounded above
};

struct WindowOptions {
  double k_min = 1e-3;
  double k_max = 1e3;
  int brackets = 512;
};

// Maximal k-intervals with rho^2(k) > 0 for the pair (n, n + theta). An
// interval touching the lower end of the scan is reported with lo = 0, the
// upper end with hi = +inf.
std::vector<Interval> collision_wavenumber_window(const ModelSpec& model, int n, int theta,
                                                  double xi, const WindowOptions& opts = {});

// Maximal xi-intervals in (0, 1/2] with rho^2(xi) > 0 at fixed k. An interval
// reaching the left end is reported with lo = 0.
std::vector<Interval> collision_floquet_window(const ModelSpec& model, int n, int theta, double k,
                                               int brackets = 512);

struct CollisionRecord {
  int n;
  int m;
  double xi;
  double k;
  double rho_c;
  double omega_c;
  int krein_n;
  int krein_m;
  bool opposite_krein;
  bool at_origin;
  bool long_wave;  // rho^2 vanishes identically in k
};

CollisionRecord make_collision_record(const ModelSpec& model, int n, int m, double xi, double k);

enum class Perturbation { Periodic, NonPeriodic };
const char* to_string(Perturbation p);

struct EnumerateOptions {
  WindowOptions window;
  int xi_samples = 64;
  std::optional<double> k;  // restrict the search to one wavenumber
};

// Mode pairs (n, n + theta) with opposite Krein signatures that collide for
// some admissible k (and some xi in (0, 1/2] for non-periodic perturbations).
std::vector<CollisionRecord> enumerate_potentially_unstable(const ModelSpec& model, int theta,
                                                            Perturbation perturbation,
                                                            const EnumerateOptions& opts = {});

bool is_origin_collision(int n, int theta, double xi);

}  // namespace transpec
