#pragma once

#include <stdexcept>
#include <string>

namespace transpec {

// Bad input: unknown model id, out-of-range parameter, unwritable path.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a formula (p = 0, k <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Wavenumber too close to a harmonic resonance for the Stokes expansion.
class ResonanceError : public DomainError {
 public:
  ResonanceError(double k_resonant, int harmonic, const std::string& what)
      : DomainError(what), k_(k_resonant), n_(harmonic) {}
  double k() const { return k_; }
  int harmonic() const { return n_; }

 private:
  double k_;
  int n_;
};

// Iterative or dense solver failed to produce an answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace transpec
