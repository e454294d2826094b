#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transpec {

enum class SymbolKind { KdV, BenjaminOno, FractionalKdV, Whitham, ILW, Reduced, Custom };

// Even Fourier multiplier j(kappa). The dispersion coefficient beta lives in
// ModelSpec, so one symbol serves both monotonicity classes.
class DispersionSymbol {
 public:
  static DispersionSymbol kdv();
  static DispersionSymbol benjamin_ono();
  static DispersionSymbol fractional_kdv(double alpha);
  static DispersionSymbol whitham();
  static DispersionSymbol ilw();
  static DispersionSymbol reduced(double value = 1.0);
  static DispersionSymbol custom(std::string name, std::function<double(double)> fn);

  double operator()(double kappa) const;

  SymbolKind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string name() const;

  // Large-kappa growth exponent b of j ~ kappa^b for the built-in symbols.
  std::optional<double> documented_growth_exponent() const;

 private:
  DispersionSymbol(SymbolKind kind, double param) : kind_(kind), param_(param) {}

  SymbolKind kind_;
  double param_ = 0.0;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::string custom_name_;
};

class ModelSpec {
 public:
  // Throws ValidationError unless gamma > 0, alpha1 in {0,1}, alpha2 in {-1,0}
  // and beta is finite.
  ModelSpec(std::string id, DispersionSymbol symbol, double beta, int alpha1, int alpha2,
            double gamma);

  const std::string& id() const { return id_; }
  const DispersionSymbol& symbol() const { return symbol_; }
  double beta() const { return beta_; }
  int alpha1() const { return alpha1_; }
  int alpha2() const { return alpha2_; }
  double gamma() const { return gamma_; }

  // beta * j(kappa)
  double jhat(double kappa) const { return beta_ * symbol_(kappa); }

  ModelSpec with_beta(double beta) const;
  ModelSpec with_gamma(double gamma) const;

 private:
  std::string id_;
  DispersionSymbol symbol_;
  double beta_;
  int alpha1_;
  int alpha2_;
  double gamma_;
};

// Named instances: rmkp, rmbo-kp, rm-fkdv-kp, rmg-kp, rm-mkdv-kp,
// rm-whitham-kp, rmilw-kp, reduced-rmkp. `alpha` is only read by rm-fkdv-kp.
// reduced-rmkp always carries beta = 0.
ModelSpec make_model(std::string_view id, double gamma = 1.0, double beta = 1.0,
                     double alpha = 1.5);
const std::vector<std::string>& model_ids();

double eval_symbol(const ModelSpec& model, double kappa);

enum class Monotonicity { Increasing, Decreasing };
const char* to_string(Monotonicity m);

// Sign class of beta*j on the grid kappa_max*i/samples, i = 1..samples.
Monotonicity classify_monotonicity(const ModelSpec& model, double kappa_max,
                                   std::size_t samples = 4096);

struct HypothesisReport {
  bool j1_even_real = false;
  bool j2_growth = false;
  bool j3_monotone = false;
  double growth_exponent = 0.0;
  std::vector<std::string> notes;
  bool passed() const { return j1_even_real && j2_growth && j3_monotone; }
};

HypothesisReport validate_hypotheses(const ModelSpec& model);

}  // namespace transpec
