#include "transpec/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "transpec/errors.hpp"

namespace transpec {

DispersionSymbol DispersionSymbol::kdv() { return {SymbolKind::KdV, 0.0}; }
DispersionSymbol DispersionSymbol::benjamin_ono() { return {SymbolKind::BenjaminOno, 0.0}; }
DispersionSymbol DispersionSymbol::whitham() { return {SymbolKind::Whitham, 0.0}; }
DispersionSymbol DispersionSymbol::ilw() { return {SymbolKind::ILW, 0.0}; }
DispersionSymbol DispersionSymbol::reduced(double value) { return {SymbolKind::Reduced, value}; }

DispersionSymbol DispersionSymbol::fractional_kdv(double alpha) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    throw ValidationError("fractional KdV exponent must be finite and > 1/2");
  }
  return {SymbolKind::FractionalKdV, alpha};
}

DispersionSymbol DispersionSymbol::custom(std::string name, std::function<double(double)> fn) {
  if (!fn) throw ValidationError("custom symbol needs a callable");
  DispersionSymbol s{SymbolKind::Custom, 0.0};
  s.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  s.custom_name_ = std::move(name);
  return s;
}

double DispersionSymbol::operator()(double kappa) const {
  if (!std::isfinite(kappa)) throw DomainError("symbol evaluated at non-finite argument");
  const double a = std::abs(kappa);
  switch (kind_) {
    case SymbolKind::KdV:
      return kappa * kappa;
    case SymbolKind::BenjaminOno:
      return a;
    case SymbolKind::FractionalKdV:
      return 1.0 + std::pow(a, param_);
    case SymbolKind::Whitham:
      if (a < 1e-4) return 1.0 - a * a / 6.0;
      return std::sqrt(std::tanh(a) / a);
    case SymbolKind::ILW:
      if (a < 1e-4) return 1.0 + a * a / 3.0;
      return a / std::tanh(a);
    case SymbolKind::Reduced:
      return param_;
    case SymbolKind::Custom:
      return (*fn_)(kappa);
  }
  return 0.0;
}

std::string DispersionSymbol::name() const {
  switch (kind_) {
    case SymbolKind::KdV: return "kdv";
    case SymbolKind::BenjaminOno: return "bo";
    case SymbolKind::FractionalKdV: {
      std::ostringstream os;
      os << "fkdv(" << param_ << ")";
      return os.str();
    }
    case SymbolKind::Whitham: return "whitham";
    case SymbolKind::ILW: return "ilw";
    case SymbolKind::Reduced: return "reduced";
    case SymbolKind::Custom: return "custom:" + custom_name_;
  }
  return "?";
}

std::optional<double> DispersionSymbol::documented_growth_exponent() const {
  switch (kind_) {
    case SymbolKind::KdV: return 2.0;
    case SymbolKind::BenjaminOno: return 1.0;
    case SymbolKind::FractionalKdV: return param_;
    case SymbolKind::Whitham: return -0.5;
    case SymbolKind::ILW: return 1.0;
    case SymbolKind::Reduced: return 0.0;
    case SymbolKind::Custom: return std::nullopt;
  }
  return std::nullopt;
}

ModelSpec::ModelSpec(std::string id, DispersionSymbol symbol, double beta, int alpha1,
                     int alpha2, double gamma)
    : id_(std::move(id)),
      symbol_(std::move(symbol)),
      beta_(beta),
      alpha1_(alpha1),
      alpha2_(alpha2),
      gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be finite and > 0");
  }
  if (!std::isfinite(beta)) throw ValidationError("beta must be finite");
  if (alpha1 != 0 && alpha1 != 1) throw ValidationError("alpha1 must be 0 or 1");
  if (alpha2 != 0 && alpha2 != -1) throw ValidationError("alpha2 must be -1 or 0");
}

ModelSpec ModelSpec::with_beta(double beta) const {
  return {id_, symbol_, beta, alpha1_, alpha2_, gamma_};
}

ModelSpec ModelSpec::with_gamma(double gamma) const {
  return {id_, symbol_, beta_, alpha1_, alpha2_, gamma};
}

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids = {
      "rmkp",       "rmbo-kp",       "rm-fkdv-kp", "rmg-kp",
      "rm-mkdv-kp", "rm-whitham-kp", "rmilw-kp",   "reduced-rmkp"};
  return ids;
}

ModelSpec make_model(std::string_view id, double gamma, double beta, double alpha) {
  const std::string s(id);
  if (s == "rmkp") return {s, DispersionSymbol::kdv(), beta, 1, 0, gamma};
  if (s == "rmbo-kp") return {s, DispersionSymbol::benjamin_ono(), beta, 1, 0, gamma};
  if (s == "rm-fkdv-kp") return {s, DispersionSymbol::fractional_kdv(alpha), beta, 1, 0, gamma};
  if (s == "rmg-kp") return {s, DispersionSymbol::kdv(), beta, 1, -1, gamma};
  if (s == "rm-mkdv-kp") return {s, DispersionSymbol::kdv(), beta, 0, -1, gamma};
  if (s == "rm-whitham-kp") return {s, DispersionSymbol::whitham(), beta, 1, 0, gamma};
  if (s == "rmilw-kp") return {s, DispersionSymbol::ilw(), beta, 1, 0, gamma};
  if (s == "reduced-rmkp") return {s, DispersionSymbol::kdv(), 0.0, 1, 0, gamma};
  throw ValidationError("unknown model id '" + s + "'");
}

double eval_symbol(const ModelSpec& model, double kappa) { return model.jhat(kappa); }

const char* to_string(Monotonicity m) {
  return m == Monotonicity::Increasing ? "Increasing" : "Decreasing";
}

Monotonicity classify_monotonicity(const ModelSpec& model, double kappa_max,
                                   std::size_t samples) {
  if (!(kappa_max > 0.0) || !std::isfinite(kappa_max)) {
    throw ValidationError("kappa_max must be finite and > 0");
  }
  if (samples < 16) throw ValidationError("monotonicity check needs at least 16 samples");
  int sign = 0;
  double prev_kappa = kappa_max / static_cast<double>(samples);
  double prev = model.jhat(prev_kappa);
  for (std::size_t i = 2; i <= samples; ++i) {
    const double kappa = kappa_max * static_cast<double>(i) / static_cast<double>(samples);
    const double v = model.jhat(kappa);
    const double d = v - prev;
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      std::ostringstream os;
      os.precision(9);
      os << "effective symbol is not strictly monotone between kappa=" << prev_kappa
         << " and kappa=" << kappa;
      throw ValidationError(os.str());
    }
    sign = s;
    prev = v;
    prev_kappa = kappa;
  }
  return sign > 0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
}

HypothesisReport validate_hypotheses(const ModelSpec& model) {
  const DispersionSymbol& j = model.symbol();
  HypothesisReport report;

  report.j1_even_real = true;
  for (int i = 0; i < 1000; ++i) {
    const double kappa = 1e-3 + 50.0 * i / 999.0;
    const double a = j(kappa);
    const double b = j(-kappa);
    if (!std::isfinite(a) || !std::isfinite(b) ||
        std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      report.j1_even_real = false;
      std::ostringstream os;
      os << "J1 fails at kappa=" << kappa;
      report.notes.push_back(os.str());
      break;
    }
  }

  // Least-squares slope of log j against log kappa on [1e3, 1e5].
  constexpr int kFit = 33;
  std::vector<double> xs, ys;
  bool positive = true;
  for (int i = 0; i < kFit; ++i) {
    const double kappa = std::pow(10.0, 3.0 + 2.0 * i / (kFit - 1));
    const double v = j(kappa);
    if (!(v > 0.0) || !std::isfinite(v)) {
      positive = false;
      break;
    }
    xs.push_back(std::log(kappa));
    ys.push_back(std::log(v));
  }
  if (positive) {
    double mx = 0, my = 0;
    for (int i = 0; i < kFit; ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= kFit;
    my /= kFit;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < kFit; ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double b = sxy / sxx;
    report.growth_exponent = b;
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < kFit; ++i) {
      const double ratio = std::exp(ys[i] - b * xs[i]);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    report.j2_growth = b >= -1.0 && lo > 0.0 && hi / lo < 4.0;
    if (!report.j2_growth) report.notes.push_back("J2 fails: no power-law bound at large kappa");
  } else {
    report.notes.push_back("J2 fails: symbol not positive at large kappa");
  }

  try {
    classify_monotonicity(model.with_beta(1.0), 50.0, 4096);
    report.j3_monotone = true;
  } catch (const ValidationError& e) {
    report.notes.push_back(std::string("J3 fails: ") + e.what());
  }
  return report;
}

}  // namespace transpec
