#include "transpec/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "transpec/errors.hpp"
#include "transpec/roots.hpp"
#include "transpec/spectrum_analytic.hpp"
#include "transpec/stokes.hpp"

namespace transpec {

namespace {

// Long-wavelength indicator written as N/D with
// D = 3 gamma + 4 k^2 (jhat(k) - jhat(2k)) and N = (3/2) a2 D + 4 a1 k^2.
double lw_denominator(const ModelSpec& m, double k) {
  return 3.0 * m.gamma() + 4.0 * k * k * (m.jhat(k) - m.jhat(2.0 * k));
}

double lw_numerator(const ModelSpec& m, double k) {
  return 1.5 * m.alpha2() * lw_denominator(m, k) + 4.0 * m.alpha1() * k * k;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

void add_lw_thresholds(Verdict& v, const std::vector<Threshold>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    v.thresholds[i == 0 ? "k_lw" : "k_lw_" + std::to_string(i + 1)] = ts[i].k;
  }
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Unstable: return "Unstable";
    case Outcome::Stable: return "Stable";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

double long_wavelength_lambda2(const ModelSpec& model, double k, double eps, double rho) {
  const StokesCoefficients s = stokes_coefficients(model, k);
  const double k2e2 = k * k * eps * eps;
  const double r2 = rho * rho;
  return -r2 * (r2 + 1.5 * model.alpha2() * k2e2 + 2.0 * model.alpha1() * k2e2 * s.eta2);
}

double long_wavelength_indicator(const ModelSpec& model, double k) {
  const StokesCoefficients s = stokes_coefficients(model, k);
  return 1.5 * model.alpha2() + 2.0 * model.alpha1() * s.eta2;
}

std::vector<Threshold> long_wavelength_thresholds(const ModelSpec& model, double k_min,
                                                  double k_max) {
  std::vector<Threshold> out;
  if (model.alpha1() == 0) return out;  // indicator is the constant (3/2) a2
  const auto grid = roots::log_space(k_min, k_max, 1025);
  auto num = [&](double k) { return lw_numerator(model, k); };
  auto den = [&](double k) { return lw_denominator(model, k); };
  const auto zeros = roots::sign_changes(num, grid);
  const auto poles = roots::sign_changes(den, grid);
  for (double z : zeros) out.push_back({z, Threshold::Kind::Zero});
  for (double p : poles) {
    const bool cancels = std::any_of(zeros.begin(), zeros.end(), [&](double z) {
      return std::abs(z - p) <= 1e-12 * p;
    });
    if (!cancels) out.push_back({p, Threshold::Kind::Pole});
  }
  std::sort(out.begin(), out.end(), [](const Threshold& a, const Threshold& b) { return a.k < b.k; });
  return out;
}

Verdict long_wavelength_verdict(const ModelSpec& model, double k) {
  const double g = long_wavelength_indicator(model, k);
  Verdict v;
  v.criterion = "long_wavelength_coperiodic";
  v.outcome = g < 0.0 ? Outcome::Unstable : Outcome::Stable;
  v.thresholds["lw_indicator"] = g;
  add_lw_thresholds(v, long_wavelength_thresholds(model));
  v.conditions.push_back({"(3/2)alpha2 + 2 alpha1 eta2(k) < 0 at k=" + fmt(k), g < 0.0});
  return v;
}

Theta1Band theta1_band(const ModelSpec& model, double k, double eps, double xi) {
  if (!(xi > 0.0 && xi <= 0.5)) throw ValidationError("theta=1 band needs xi in (0, 1/2]");
  Theta1Band b{};
  b.xi = xi;
  b.rho_c2 = collision_rho_squared(model, -1, 0, xi, k);
  const double a1k2 = model.alpha1() * k * k;
  const double s = xi * (1.0 - xi);
  b.halfwidth = 2.0 * a1k2 * s * std::sqrt(s) * std::abs(eps);
  b.omega_c = omega(model, -1, std::sqrt(std::max(b.rho_c2, 0.0)), xi, k);
  b.growth_peak = a1k2 * std::abs(eps) * std::sqrt(s);
  return b;
}

std::pair<double, double> theta1_max_rho2(const ModelSpec& model, double k) {
  auto f = [&](double xi) { return collision_rho_squared(model, -1, 0, xi, k); };
  auto [xi, val] = roots::golden_max(f, 1e-4, 0.5, 1e-8);
  const double edge = f(0.5);
  if (edge >= val) return {edge, 0.5};
  return {val, xi};
}

std::optional<double> theta1_threshold(const ModelSpec& model, double k_min, double k_max) {
  auto h = [&](double k) { return theta1_max_rho2(model, k).first; };
  const auto roots = roots::sign_changes(h, roots::log_space(k_min, k_max, 257));
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

Verdict theta1_verdict(const ModelSpec& model, double k) {
  if (!(k > 0.0)) throw DomainError("wavenumber k must be > 0");
  const auto [r2, xi] = theta1_max_rho2(model, k);
  Verdict v;
  v.criterion = "finite_wavelength_theta1";
  v.outcome = r2 > 0.0 ? Outcome::Unstable : Outcome::Stable;
  v.thresholds["rho_c2_max"] = r2;
  v.thresholds["xi_star"] = xi;
  if (auto kt = theta1_threshold(model)) v.thresholds["k_t1b"] = *kt;
  v.conditions.push_back(
      {"modes -1 and 0 collide with rho_c^2 > 0 for some xi in (0, 1/2] at k=" + fmt(k),
       r2 > 0.0});
  return v;
}

double theta_ge2_disc(int n, int theta, double xi, double varsigma, double eps, double beta2,
                      double k) {
  if (theta < 2) throw ValidationError("discriminant analysis needs theta >= 2");
  const double pq = (n + xi) * (n + xi + theta);
  if (pq == 0.0) throw DomainError("degenerate collision denominator (n + xi)(n + xi + theta) = 0");
  const double t2 = static_cast<double>(theta) * theta;
  const double e2 = eps * eps;
  return t2 * varsigma * varsigma / (pq * pq) + k * k * k * k * t2 * beta2 * beta2 * e2 * e2;
}

const char* column_label(AtlasColumn c) {
  switch (c) {
    case AtlasColumn::LongWavePeriodicBetaPos: return "LWTP periodic beta>0";
    case AtlasColumn::LongWavePeriodicBetaNonPos: return "LWTP periodic beta<=0";
    case AtlasColumn::LongWaveNonPeriodic: return "LWTP non-periodic";
    case AtlasColumn::FiniteWavePeriodic: return "F/SWTP periodic";
    case AtlasColumn::FiniteWaveNonPeriodicBetaPos: return "F/SWTP non-periodic beta>0";
    case AtlasColumn::FiniteWaveNonPeriodicBetaNonPos: return "F/SWTP non-periodic beta<=0";
  }
  return "?";
}

namespace {

std::string display_name(const std::string& id) {
  if (id == "rmkp") return "RMKP";
  if (id == "rmbo-kp") return "RMBO-KP";
  if (id == "rm-fkdv-kp") return "RM-fKdV-KP";
  if (id == "rmg-kp") return "RMG-KP";
  if (id == "rm-mkdv-kp") return "RM-mKdV-KP";
  if (id == "rm-whitham-kp") return "RM-Whitham-KP";
  if (id == "rmilw-kp") return "RMILW-KP";
  if (id == "reduced-rmkp") return "Reduced RMKP";
  return id;
}

Verdict long_wave_existence(const ModelSpec& m, const std::vector<double>& ks) {
  Verdict v;
  v.criterion = "long_wavelength_coperiodic";
  v.outcome = Outcome::Stable;
  for (double k : ks) {
    const double d = lw_denominator(m, k);
    if (std::abs(d) < 1e-9 * m.gamma()) continue;
    const double g = lw_numerator(m, k) / d;
    if (g < 0.0) {
      v.outcome = Outcome::Unstable;
      v.thresholds["k_unstable"] = k;
      break;
    }
  }
  add_lw_thresholds(v, long_wavelength_thresholds(m, ks.front(), ks.back()));
  v.conditions.push_back({"long-wavelength indicator negative for some sampled k",
                          v.outcome == Outcome::Unstable});
  return v;
}

Verdict theta1_existence(const ModelSpec& m, const std::vector<double>& ks,
                         const AtlasOptions& opts) {
  Verdict v;
  v.criterion = "finite_wavelength_theta1";
  v.outcome = Outcome::Stable;
  for (double k : ks) {
    if (theta1_max_rho2(m, k).first > 0.0) {
      v.outcome = Outcome::Unstable;
      v.thresholds["k_unstable"] = k;
      break;
    }
  }
  if (auto kt = theta1_threshold(m, opts.k_min, opts.k_max)) v.thresholds["k_t1b"] = *kt;
  v.conditions.push_back({"modes -1 and 0 collide with rho_c^2 > 0 for some k",
                          v.outcome == Outcome::Unstable});
  return v;
}

// Theta >= 2 collisions at finite rho_c: the reduced discriminant is a sum of
// squares, so each node is recorded as stable.
void check_higher_nodes(Verdict& v, const ModelSpec& m, Perturbation kind,
                        const AtlasOptions& opts) {
  EnumerateOptions eo;
  eo.window = {opts.k_min, opts.k_max, 512};
  eo.xi_samples = 16;
  int nodes = 0;
  bool disc_ok = true;
  for (int theta = 2; theta <= opts.max_theta; ++theta) {
    for (const auto& r : enumerate_potentially_unstable(m, theta, kind, eo)) {
      if (r.long_wave) continue;
      ++nodes;
      const double d = theta_ge2_disc(r.n, theta, r.xi, 0.0, 0.01, 1.0, r.k);
      disc_ok = disc_ok && d >= 0.0;
    }
  }
  v.conditions.push_back({"higher-order (theta>=2) nodes: " + std::to_string(nodes) +
                              ", discriminant nonnegative",
                          disc_ok});
  if (!disc_ok) v.outcome = Outcome::Inconclusive;
}

}  // namespace

std::vector<AtlasRow> atlas(const std::vector<ModelSpec>& models, const AtlasOptions& opts) {
  const auto ks = roots::log_space(opts.k_min, opts.k_max, opts.k_samples);
  std::vector<AtlasRow> rows(models.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < models.size(); ++i) {
    const ModelSpec& base = models[i];
    const double mag = base.beta() == 0.0 ? 1.0 : std::abs(base.beta());
    const ModelSpec pos = base.with_beta(mag);
    const ModelSpec neg = base.with_beta(-mag);
    AtlasRow& row = rows[i];
    row.model_id = base.id();
    row.label = display_name(base.id());

    row.cells[0] = long_wave_existence(pos, ks);
    row.cells[1] = long_wave_existence(neg, ks);

    Verdict lw_np;
    lw_np.criterion = "long_wavelength_nonperiodic";
    lw_np.outcome = Outcome::Stable;
    int found = 0;
    EnumerateOptions eo;
    eo.window = {opts.k_min, opts.k_max, 512};
    eo.xi_samples = 16;
    for (const ModelSpec* m : {&pos, &neg}) {
      for (int theta = 1; theta <= opts.max_theta; ++theta) {
        for (const auto& r : enumerate_potentially_unstable(*m, theta, Perturbation::NonPeriodic, eo)) {
          if (r.long_wave) ++found;
        }
      }
    }
    if (found > 0) lw_np.outcome = Outcome::Inconclusive;
    lw_np.conditions.push_back({"no collision at rho=0 for xi != 0", found == 0});
    row.cells[2] = lw_np;

    Verdict fw_p;
    fw_p.criterion = "finite_wavelength_theta_ge2";
    fw_p.outcome = Outcome::Stable;
    check_higher_nodes(fw_p, pos, Perturbation::Periodic, opts);
    check_higher_nodes(fw_p, neg, Perturbation::Periodic, opts);
    row.cells[3] = fw_p;

    row.cells[4] = theta1_existence(pos, ks, opts);
    row.cells[5] = theta1_existence(neg, ks, opts);
  }
  return rows;
}

std::vector<ModelSpec> default_atlas_models() {
  std::vector<ModelSpec> out;
  for (const char* id :
       {"rmbo-kp", "rm-fkdv-kp", "rmg-kp", "rm-mkdv-kp", "rm-whitham-kp", "rmilw-kp"}) {
    out.push_back(make_model(id, 1.0, 1.0, 1.5));
  }
  return out;
}

Verdict classify(const ModelSpec& model, double k) {
  const Verdict lw = long_wavelength_verdict(model, k);
  const Verdict t1 = theta1_verdict(model, k);
  Verdict v;
  v.criterion = "long_wavelength_coperiodic+finite_wavelength_theta1";
  const bool unstable = lw.outcome == Outcome::Unstable || t1.outcome == Outcome::Unstable;
  v.outcome = unstable ? Outcome::Unstable : Outcome::Stable;
  v.thresholds = lw.thresholds;
  for (const auto& [key, val] : t1.thresholds) v.thresholds[key] = val;
  v.conditions = lw.conditions;
  v.conditions.insert(v.conditions.end(), t1.conditions.begin(), t1.conditions.end());
  return v;
}

}  // namespace transpec
